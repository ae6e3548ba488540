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

#ifndef HEAPSCOPE_ORACLE_HPP
#define HEAPSCOPE_ORACLE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "heapscope/model.hpp"

namespace heapscope::oracle {

// Random streams: trial i of a run seeded with S uses std::mt19937_64 seeded
// with splitmix64(S + i). Uniform doubles take the top 53 bits of one 64-bit
// output, so sequences are reproducible across platforms and languages.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;
double uniform01(std::mt19937_64 &rng) noexcept;

// Vose alias table over a ProbabilityVector. Groups with multiplicity m are one
// alias column; a second draw picks one of the m words.
class WordSampler {
  public:
    explicit WordSampler(const model::ProbabilityVector &probs);

    std::uint64_t word_count() const noexcept { return words_; }
    // Word index in [0, word_count()).
    std::uint64_t draw(std::mt19937_64 &rng) const noexcept;

  private:
    std::vector<double> accept_;
    std::vector<std::uint32_t> alias_;
    std::vector<std::uint64_t> first_word_;
    std::vector<std::uint64_t> multiplicity_;
    std::uint64_t words_ = 0;
};

// Reusable state for counting distinct words in sampled texts.
class DistinctCounter {
  public:
    explicit DistinctCounter(const model::ProbabilityVector &probs);

    std::uint64_t count(std::int64_t L, std::mt19937_64 &rng);

  private:
    WordSampler sampler_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

// Draws L i.i.d. words and returns the number of distinct ones. Throws DomainError for L < 0.
std::uint64_t sample_distinct_count(const model::ProbabilityVector &probs, std::int64_t L,
                                    std::uint64_t seed);

// Mean and standard error of the distinct count over `trials` replicas; trial
// i uses trial_seed(seed, i). Throws DomainError for trials < 2 or L < 0.
McEstimate mc_expected_vocab(const model::ProbabilityVector &probs, std::int64_t L,
                             std::int64_t trials, std::uint64_t seed);

} // namespace heapscope::oracle

#endif // HEAPSCOPE_ORACLE_HPP
