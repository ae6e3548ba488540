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
#include <cmath>
#include <limits>
#include <string>

#include "heapscope/oracle.hpp"

namespace heapscope::oracle {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
    return splitmix64(seed + trial);
}

double uniform01(std::mt19937_64 &rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

WordSampler::WordSampler(const model::ProbabilityVector &probs) {
    const auto groups = probs.groups();
    const std::size_t n = groups.size();
    if (n == 0)
        throw DomainError("cannot sample from an empty probability vector");
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("too many probability groups for the alias table");

    accept_.resize(n);
    alias_.resize(n);
    first_word_.resize(n);
    multiplicity_.resize(n);
    std::vector<double> scaled(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        total += groups[i].p * static_cast<double>(groups[i].multiplicity);
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = groups[i].p * static_cast<double>(groups[i].multiplicity) *
                    static_cast<double>(n) / total;
        first_word_[i] = words_;
        multiplicity_[i] = groups[i].multiplicity;
        words_ += groups[i].multiplicity;
    }

    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    while (!small.empty() && !large.empty()) {
        const auto s = small.back();
        small.pop_back();
        const auto l = large.back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1 up to rounding.
    for (auto i : large) {
        accept_[i] = 1.0;
        alias_[i] = i;
    }
    for (auto i : small) {
        accept_[i] = 1.0;
        alias_[i] = i;
    }
}

std::uint64_t WordSampler::draw(std::mt19937_64 &rng) const noexcept {
    const double x = uniform01(rng) * static_cast<double>(accept_.size());
    auto column = static_cast<std::size_t>(x);
    if (column >= accept_.size())
        column = accept_.size() - 1;
    const double coin = x - static_cast<double>(column);
    const std::size_t group = coin < accept_[column] ? column : alias_[column];
    const auto m = multiplicity_[group];
    if (m == 1)
        return first_word_[group];
    auto offset = static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(m));
    if (offset >= m)
        offset = m - 1;
    return first_word_[group] + offset;
}

DistinctCounter::DistinctCounter(const model::ProbabilityVector &probs)
    : sampler_(probs), stamp_(sampler_.word_count(), 0) {}

std::uint64_t DistinctCounter::count(std::int64_t L, std::mt19937_64 &rng) {
    if (L < 0)
        throw DomainError("text length must be non-negative, got " + std::to_string(L));
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    std::uint64_t distinct = 0;
    for (std::int64_t i = 0; i < L; ++i) {
        auto &s = stamp_[sampler_.draw(rng)];
        if (s != epoch_) {
            s = epoch_;
            ++distinct;
        }
    }
    return distinct;
}

std::uint64_t sample_distinct_count(const model::ProbabilityVector &probs, std::int64_t L,
                                    std::uint64_t seed) {
    if (L < 0)
        throw DomainError("text length must be non-negative, got " + std::to_string(L));
    DistinctCounter counter(probs);
    std::mt19937_64 rng(seed);
    return counter.count(L, rng);
}

McEstimate mc_expected_vocab(const model::ProbabilityVector &probs, std::int64_t L,
                             std::int64_t trials, std::uint64_t seed) {
    if (trials < 2)
        throw DomainError("Monte Carlo estimate needs at least 2 trials, got " +
                          std::to_string(trials));
    if (L < 0)
        throw DomainError("text length must be non-negative, got " + std::to_string(L));
    DistinctCounter counter(probs);
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
        const unsigned __int128 x = counter.count(L, rng);
        sum += x;
        sum_sq += x * x;
    }
    const auto n = static_cast<unsigned __int128>(trials);
    McEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.mean = static_cast<double>(sum) / static_cast<double>(trials);
    // n * sum x^2 - (sum x)^2 is exact, so constant samples give exactly zero.
    const unsigned __int128 spread = n * sum_sq - sum * sum;
    const double variance = static_cast<double>(spread) /
                            (static_cast<double>(trials) * static_cast<double>(trials - 1));
    est.std_error = std::sqrt(variance / static_cast<double>(trials));
    return est;
}

} // namespace heapscope::oracle
