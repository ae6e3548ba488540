/*
 * Copyright 2026 The heapscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "heapscope/detail/summation.hpp"
#include "heapscope/model.hpp"

namespace heapscope::model {

ProbabilityVector::ProbabilityVector(std::vector<ProbabilityGroup> groups) : groups_(std::move(groups)) {
    std::stable_sort(groups_.begin(), groups_.end(),
                     [](const ProbabilityGroup &a, const ProbabilityGroup &b) { return a.p > b.p; });
    detail::ExactSum total;
    for (const auto &g : groups_) {
        if (!(g.p > 0.0 && g.p <= 1.0))
            throw DomainError("probability " + std::to_string(g.p) + " outside (0, 1]");
        if (g.multiplicity == 0)
            throw DomainError("probability group with zero multiplicity");
        total.add_scaled(g.p, static_cast<double>(g.multiplicity));
        words_ += g.multiplicity;
    }
    const double sum = total.value();
    if (std::fabs(sum - 1.0) > kSumTolerance)
        throw DomainError("probabilities sum to " + std::to_string(sum) + ", not 1");
}

ProbabilityVector ProbabilityVector::from_probabilities(std::span<const double> probs) {
    std::vector<ProbabilityGroup> groups;
    groups.reserve(probs.size());
    for (double p : probs)
        groups.push_back({p, 1});
    return ProbabilityVector(std::move(groups));
}

ProbabilityVector ProbabilityVector::from_counts(std::span<const std::uint64_t> counts) {
    std::map<std::uint64_t, std::uint64_t, std::greater<>> multiplicity;
    std::uint64_t total = 0;
    for (auto c : counts) {
        if (c == 0)
            throw DomainError("zero count in probability source");
        ++multiplicity[c];
        total += c;
    }
    if (total == 0)
        throw DomainError("empty probability source");
    std::vector<ProbabilityGroup> groups;
    groups.reserve(multiplicity.size());
    for (const auto &[count, m] : multiplicity)
        groups.push_back({static_cast<double>(count) / static_cast<double>(total), m});
    return ProbabilityVector(std::move(groups));
}

ProbabilityVector ProbabilityVector::from_table(const ingest::FrequencyTable &table) {
    std::vector<std::uint64_t> counts;
    counts.reserve(table.distinct_tokens());
    for (const auto &[token, count] : table.counts())
        counts.push_back(count);
    return from_counts(counts);
}

ProbabilityVector ProbabilityVector::expanded() const {
    std::vector<ProbabilityGroup> words;
    words.reserve(words_);
    for (const auto &g : groups_)
        for (std::uint64_t i = 0; i < g.multiplicity; ++i)
            words.push_back({g.p, 1});
    return ProbabilityVector(std::move(words));
}

ProbabilityVector parse_probability_tsv(std::string_view text) {
    std::vector<ProbabilityGroup> groups;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        auto tab = line.find('\t');
        ProbabilityGroup g;
        std::string_view pf = line.substr(0, tab);
        auto [pp, pec] = std::from_chars(pf.data(), pf.data() + pf.size(), g.p);
        bool ok = pec == std::errc() && pp == pf.data() + pf.size() && !pf.empty();
        if (ok && tab != std::string_view::npos) {
            std::string_view mf = line.substr(tab + 1);
            auto [mp, mec] = std::from_chars(mf.data(), mf.data() + mf.size(), g.multiplicity);
            ok = mec == std::errc() && mp == mf.data() + mf.size() && !mf.empty();
        }
        if (!ok)
            throw MalformedRecord("probability file line " + std::to_string(line_no) +
                                  ": expected 'probability<TAB>multiplicity'");
        groups.push_back(g);
    }
    return ProbabilityVector(std::move(groups));
}

ProbabilityVector zipf_probs(double beta, std::uint64_t W) {
    if (W < 1)
        throw DomainError("Zipf vocabulary size must be at least 1");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw DomainError("Zipf exponent must be non-negative");
    std::vector<double> weights(W);
    detail::ExactSum norm;
    for (std::uint64_t k = 1; k <= W; ++k) {
        weights[k - 1] = std::pow(static_cast<double>(k), -beta);
        norm.add(weights[k - 1]);
    }
    const double s = norm.value();
    std::vector<ProbabilityGroup> groups;
    groups.reserve(W);
    for (double w : weights)
        groups.push_back({w / s, 1});
    return ProbabilityVector(std::move(groups));
}

} // namespace heapscope::model
