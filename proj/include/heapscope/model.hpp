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

#ifndef HEAPSCOPE_MODEL_HPP
#define HEAPSCOPE_MODEL_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "heapscope/error.hpp"
#include "heapscope/growth.hpp"
#include "heapscope/ingest.hpp"

namespace heapscope::model {

// `multiplicity` words share probability `p`.
struct ProbabilityGroup {
    double p = 0.0;
    std::uint64_t multiplicity = 1;

    friend bool operator==(const ProbabilityGroup &, const ProbabilityGroup &) = default;
};

// Word-usage probabilities in descending order, stored in multiplicity form.
// Every p lies in (0, 1] and the probabilities sum to 1 within 1e-9.
class ProbabilityVector {
  public:
    static constexpr double kSumTolerance = 1e-9;

    ProbabilityVector() = default;
    // Throws DomainError when the invariants do not hold.
    explicit ProbabilityVector(std::vector<ProbabilityGroup> groups);

    static ProbabilityVector from_probabilities(std::span<const double> probs);
    // p = count / L for every token; tokens with equal counts share a group.
    static ProbabilityVector from_table(const ingest::FrequencyTable &table);
    static ProbabilityVector from_counts(std::span<const std::uint64_t> counts);

    std::span<const ProbabilityGroup> groups() const noexcept { return groups_; }
    std::uint64_t word_count() const noexcept { return words_; }
    double min_probability() const { return groups_.back().p; }
    // One group per word.
    ProbabilityVector expanded() const;

    friend bool operator==(const ProbabilityVector &, const ProbabilityVector &) = default;

  private:
    std::vector<ProbabilityGroup> groups_;
    std::uint64_t words_ = 0;
};

// "probability<TAB>multiplicity" rows; '#' lines are ignored.
ProbabilityVector parse_probability_tsv(std::string_view text);

// Probability that a word with usage probability p occurs at least once among
// L draws, 1 - (1 - p)^L. Throws DomainError for p outside (0, 1] or L < 0.
double hit_probability(double p, double L);

// Expected number of distinct words in a text of L tokens. The sum is
// correctly rounded, so the result does not depend on the grouping of equal
// probabilities.
double expected_vocab(const ProbabilityVector &probs, double L);

// Vocabulary with function words counted unconditionally and content words
// drawn from the remaining zeta * L tokens.
struct ModelConfig {
    // Renormalized over content words only.
    ProbabilityVector content_probs;
    std::uint64_t n_serv = 0;
    double zeta = 1.0;

    void validate() const;
};

double expected_vocab_modified(const ModelConfig &cfg, double L);

// Splits a table into function and content words: n_serv is the number of
// function words present in the table, zeta its content share.
ModelConfig split_function_words(const ingest::FrequencyTable &table,
                                 const growth::FunctionWordList &fw);

// p_k = A k^-beta for k = 1..W, normalized to sum to 1.
ProbabilityVector zipf_probs(double beta, std::uint64_t W);

using Evaluator = std::function<double(double)>;

Evaluator evaluator_for(const ProbabilityVector &probs);
Evaluator evaluator_for(const ModelConfig &cfg);

// 10^lo_decade .. 10^hi_decade with `per_decade` points per decade.
std::vector<double> geometric_grid(double lo_decade, double hi_decade, int per_decade);

constexpr int kDefaultGridPerDecade = 16;

struct CurvePoint {
    double L = 0.0;
    double N = 0.0;
};

// Throws DomainError unless the grid is strictly increasing and non-negative.
std::vector<CurvePoint> model_growth_curve(const Evaluator &evaluator, std::span<const double> grid);

struct ScanPoint {
    double L = 0.0;
    double N = 0.0;
    double k = 0.0;
};

using ExponentScan = std::vector<ScanPoint>;

// Local Heaps exponent k = d ln N / d ln L by central differences on the grid
// (one-sided at the ends), positive for growing N. Needs at least 3 grid points,
// all L > 0; throws DomainError when N = 0 at a grid point.
ExponentScan local_heaps_exponent(const Evaluator &evaluator, std::span<const double> grid);

} // namespace heapscope::model

#endif // HEAPSCOPE_MODEL_HPP
