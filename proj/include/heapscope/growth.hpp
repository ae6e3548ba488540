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

#ifndef HEAPSCOPE_GROWTH_HPP
#define HEAPSCOPE_GROWTH_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "heapscope/fit.hpp"
#include "heapscope/ingest.hpp"

namespace heapscope::growth {

using ingest::Year;

struct GrowthPoint {
    Year year = 0;
    std::uint64_t tokens = 0;   // L
    std::uint64_t distinct = 0; // N

    friend bool operator==(const GrowthPoint &, const GrowthPoint &) = default;
};

// Empirical Heaps scatter: one independent (L, N) point per year, years
// strictly increasing, L >= N at every point.
class GrowthCurve {
  public:
    GrowthCurve() = default;
    // Sorts by year; throws std::invalid_argument on duplicate years or N > L.
    explicit GrowthCurve(std::vector<GrowthPoint> points);

    std::span<const GrowthPoint> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    Year first_year() const { return points_.front().year; }
    Year last_year() const { return points_.back().year; }

    friend bool operator==(const GrowthCurve &, const GrowthCurve &) = default;

  private:
    std::vector<GrowthPoint> points_;
};

struct YearRange {
    Year first = 0;
    Year last = 0;

    bool contains(Year y) const noexcept { return y >= first && y <= last; }
};

GrowthPoint growth_point(const ingest::FrequencyTable &table);

// Throws EmptyRange when no table falls inside `range`.
GrowthCurve growth_points(std::span<const ingest::FrequencyTable> tables,
                          std::optional<YearRange> range = {});

class FunctionWordList {
  public:
    FunctionWordList() = default;
    // Tokens are normalized with `cfg`; tokens the filter rejects are dropped
    // and counted in rejected().
    FunctionWordList(std::span<const std::string> tokens, const ingest::FilterConfig &cfg);

    bool contains(std::string_view token) const { return words_.contains(std::string(token)); }
    std::size_t size() const noexcept { return words_.size(); }
    std::size_t rejected() const noexcept { return rejected_; }
    const std::unordered_set<std::string> &words() const noexcept { return words_; }

  private:
    std::unordered_set<std::string> words_;
    std::size_t rejected_ = 0;
};

// One token per line; '#' lines and blank lines are ignored.
FunctionWordList parse_function_words(std::string_view text, const ingest::FilterConfig &cfg);
FunctionWordList load_function_words(const std::filesystem::path &path,
                                     const ingest::FilterConfig &cfg);

// Throws EmptyTable for a table with no tokens.
double function_word_share(const ingest::FrequencyTable &table, const FunctionWordList &fw);
double content_share(const ingest::FrequencyTable &table, const FunctionWordList &fw);

struct HeapsPoint {
    Year center_year = 0;
    double k = 0.0;
    fit::PowerLawFit fit;
};

struct HeapsSeries {
    std::vector<HeapsPoint> points;
    // Centers of full-width windows skipped for having fewer than 3 points.
    std::vector<Year> skipped_centers;
};

constexpr int kDefaultWindowYears = 51;
constexpr std::size_t kMinWindowPoints = 3;

// Center year of a window starting at `start`. Odd widths center exactly;
// even widths use the upper of the two middle years.
constexpr Year window_center(Year start, int window_years) { return start + window_years / 2; }

// Slides a window of `window_years` consecutive years along the curve in steps
// of `step` years. Only windows lying entirely inside the curve's year span are
// considered. Throws InsufficientData when no window has 3 or more points and
// std::invalid_argument for window_years < 1 or step < 1.
HeapsSeries sliding_heaps(const GrowthCurve &curve, int window_years, int step = 1);

// Points with years in [center - half_width, center + half_width]. Throws
// EmptyRange when the center lies outside the curve or nothing is selected.
GrowthCurve window_extract(const GrowthCurve &curve, Year center_year, int half_width);

std::vector<fit::Point> to_fit_points(const GrowthCurve &curve);

} // namespace heapscope::growth

#endif // HEAPSCOPE_GROWTH_HPP
