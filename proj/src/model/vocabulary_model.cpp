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

#include <cmath>
#include <string>

#include "heapscope/detail/summation.hpp"
#include "heapscope/model.hpp"

namespace heapscope::model {

namespace {

void check_length(double L) {
    if (!(L >= 0.0) || std::isinf(L))
        throw DomainError("text length must be finite and non-negative, got " + std::to_string(L));
}

void check_grid(std::span<const double> grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        check_length(grid[i]);
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError("L grid must be strictly increasing");
    }
}

} // namespace

double hit_probability(double p, double L) {
    if (!(p > 0.0 && p <= 1.0))
        throw DomainError("probability " + std::to_string(p) + " outside (0, 1]");
    check_length(L);
    if (L == 0.0)
        return 0.0;
    if (p == 1.0)
        return 1.0;
    return -std::expm1(L * std::log1p(-p));
}

double expected_vocab(const ProbabilityVector &probs, double L) {
    check_length(L);
    detail::ExactSum sum;
    for (const auto &g : probs.groups()) {
        const double term = hit_probability(g.p, L);
        if (g.multiplicity == 1)
            sum.add(term);
        else
            sum.add_scaled(term, static_cast<double>(g.multiplicity));
    }
    return sum.value();
}

void ModelConfig::validate() const {
    if (!(zeta >= 0.0 && zeta <= 1.0))
        throw DomainError("content share zeta must lie in [0, 1], got " + std::to_string(zeta));
}

double expected_vocab_modified(const ModelConfig &cfg, double L) {
    cfg.validate();
    check_length(L);
    return static_cast<double>(cfg.n_serv) + expected_vocab(cfg.content_probs, cfg.zeta * L);
}

ModelConfig split_function_words(const ingest::FrequencyTable &table,
                                 const growth::FunctionWordList &fw) {
    ModelConfig cfg;
    cfg.zeta = growth::content_share(table, fw);
    std::vector<std::uint64_t> content;
    content.reserve(table.distinct_tokens());
    for (const auto &[token, count] : table.counts()) {
        if (fw.contains(token))
            ++cfg.n_serv;
        else
            content.push_back(count);
    }
    if (!content.empty())
        cfg.content_probs = ProbabilityVector::from_counts(content);
    return cfg;
}

Evaluator evaluator_for(const ProbabilityVector &probs) {
    return [&probs](double L) { return expected_vocab(probs, L); };
}

Evaluator evaluator_for(const ModelConfig &cfg) {
    cfg.validate();
    return [&cfg](double L) { return expected_vocab_modified(cfg, L); };
}

std::vector<double> geometric_grid(double lo_decade, double hi_decade, int per_decade) {
    if (per_decade < 1)
        throw DomainError("grid needs at least one point per decade");
    if (!(hi_decade > lo_decade))
        throw DomainError("grid upper decade must exceed the lower one");
    const auto steps = static_cast<long>(std::llround((hi_decade - lo_decade) * per_decade));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps) + 1);
    for (long i = 0; i <= steps; ++i)
        grid.push_back(std::pow(10.0, lo_decade + static_cast<double>(i) / per_decade));
    grid.back() = std::pow(10.0, hi_decade);
    return grid;
}

std::vector<CurvePoint> model_growth_curve(const Evaluator &evaluator, std::span<const double> grid) {
    check_grid(grid);
    std::vector<CurvePoint> curve;
    curve.reserve(grid.size());
    for (double L : grid)
        curve.push_back({L, evaluator(L)});
    return curve;
}

ExponentScan local_heaps_exponent(const Evaluator &evaluator, std::span<const double> grid) {
    if (grid.size() < 3)
        throw DomainError("exponent scan needs at least 3 grid points");
    check_grid(grid);
    if (!(grid.front() > 0.0))
        throw DomainError("exponent scan needs L > 0");

    ExponentScan scan;
    scan.reserve(grid.size());
    for (double L : grid) {
        const double N = evaluator(L);
        if (!(N > 0.0))
            throw DomainError("expected vocabulary is zero at L=" + std::to_string(L));
        scan.push_back({L, N, 0.0});
    }
    auto slope = [&scan](std::size_t a, std::size_t b) {
        return std::log(scan[b].N / scan[a].N) / std::log(scan[b].L / scan[a].L);
    };
    const std::size_t last = scan.size() - 1;
    scan.front().k = slope(0, 1);
    for (std::size_t j = 1; j < last; ++j)
        scan[j].k = slope(j - 1, j + 1);
    scan.back().k = slope(last - 1, last);
    return scan;
}

} // namespace heapscope::model
