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

#ifndef HEAPSCOPE_FIT_HPP
#define HEAPSCOPE_FIT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "heapscope/error.hpp"
#include "heapscope/ingest.hpp"

namespace heapscope::fit {

// Counts in rank order; rank r (1-based) has count counts[r - 1].
// Counts are positive and non-increasing.
class RankFrequency {
  public:
    RankFrequency() = default;
    explicit RankFrequency(std::vector<std::uint64_t> counts,
                           std::vector<std::string> tokens = {});

    std::size_t max_rank() const noexcept { return counts_.size(); }
    std::uint64_t count_at(std::size_t rank) const { return counts_.at(rank - 1); }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    // Empty when built from bare counts.
    std::span<const std::string> tokens() const noexcept { return tokens_; }
    std::uint64_t total_tokens() const noexcept { return total_; }

  private:
    std::vector<std::uint64_t> counts_;
    std::vector<std::string> tokens_;
    std::uint64_t total_ = 0;
};

// Ties are ordered by ascending token bytes. Throws EmptyTable.
RankFrequency rank_table(const ingest::FrequencyTable &table);

// Parses "rank\tcount" rows (ranks must be contiguous from 1). Lines starting
// with '#' are ignored.
RankFrequency parse_rank_tsv(std::string_view text);

enum class FitMethod { LsLogLog, MleMultinomial };

std::string_view to_string(FitMethod m);
FitMethod parse_fit_method(std::string_view s);

struct PowerLawFit {
    // Heaps k for LS fits, Zipf beta for MLE fits.
    double exponent = 0.0;
    // LS: intercept of ln y on ln x. MLE: -ln H(beta), so p_r = exp(log_prefactor) r^-beta.
    double log_prefactor = 0.0;
    double range_lo = 0.0;
    double range_hi = 0.0;
    FitMethod method = FitMethod::LsLogLog;
    // LS: residual sum of squares in log space. MLE: log-likelihood at the optimum.
    double diagnostic = 0.0;
    std::size_t n_points = 0;

    friend bool operator==(const PowerLawFit &, const PowerLawFit &) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

// Ordinary least squares of ln y on ln x over points with lo <= x <= hi.
// Throws NonPositiveValue for x or y <= 0 inside the range, and
// InsufficientPoints when fewer than two distinct x values remain.
PowerLawFit fit_powerlaw_ls(std::span<const Point> points, std::optional<Range> x_range = {});

// Thrown when the likelihood maximum lies on the search boundary. The fit at
// the boundary is carried for reporting.
class NoInteriorMaximum : public DataError {
  public:
    NoInteriorMaximum(const std::string &what, PowerLawFit fit) : DataError(what), fit_(fit) {}
    const PowerLawFit &fit() const noexcept { return fit_; }

  private:
    PowerLawFit fit_;
};

// The log-likelihood failed the concavity check during optimization.
class NonConcaveObjective : public DataError {
  public:
    using DataError::DataError;
};

struct ZipfSearch {
    double beta_lo = 0.05;
    double beta_hi = 6.0;
    double tolerance = 1e-8;
};

// Range-restricted multinomial MLE of the Zipf exponent over ranks r_lo..r_hi.
PowerLawFit fit_zipf_mle(const RankFrequency &rf, std::size_t r_lo, std::size_t r_hi,
                         const ZipfSearch &search = {});

// Log-likelihood of the range-restricted model; exposed for diagnostics and tests.
double zipf_log_likelihood(const RankFrequency &rf, std::size_t r_lo, std::size_t r_hi,
                           double beta);

nlohmann::json fit_report(const PowerLawFit &fit);
PowerLawFit parse_fit_report(const nlohmann::json &j);

} // namespace heapscope::fit

#endif // HEAPSCOPE_FIT_HPP
