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
#include <stdexcept>

#include "heapscope/growth.hpp"

namespace heapscope::growth {

GrowthCurve::GrowthCurve(std::vector<GrowthPoint> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end(),
              [](const GrowthPoint &a, const GrowthPoint &b) { return a.year < b.year; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i > 0 && points_[i].year == points_[i - 1].year)
            throw std::invalid_argument("growth curve has duplicate year " +
                                        std::to_string(points_[i].year));
        if (points_[i].distinct > points_[i].tokens)
            throw std::invalid_argument("growth point for year " + std::to_string(points_[i].year) +
                                        " has N > L");
    }
}

GrowthPoint growth_point(const ingest::FrequencyTable &table) {
    return {table.year(), table.total_tokens(), table.distinct_tokens()};
}

GrowthCurve growth_points(std::span<const ingest::FrequencyTable> tables,
                          std::optional<YearRange> range) {
    std::vector<GrowthPoint> points;
    for (const auto &t : tables) {
        if (range && !range->contains(t.year()))
            continue;
        points.push_back(growth_point(t));
    }
    if (points.empty())
        throw EmptyRange("no frequency tables in the requested year range");
    return GrowthCurve(std::move(points));
}

FunctionWordList::FunctionWordList(std::span<const std::string> tokens,
                                   const ingest::FilterConfig &cfg) {
    for (const auto &t : tokens) {
        if (auto norm = ingest::normalize_token(t, cfg))
            words_.insert(std::move(*norm));
        else
            ++rejected_;
    }
}

FunctionWordList parse_function_words(std::string_view text, const ingest::FilterConfig &cfg) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty() || line.front() == '#')
            continue;
        tokens.emplace_back(line);
    }
    return FunctionWordList(tokens, cfg);
}

FunctionWordList load_function_words(const std::filesystem::path &path,
                                     const ingest::FilterConfig &cfg) {
    return parse_function_words(ingest::read_text_file(path), cfg);
}

double function_word_share(const ingest::FrequencyTable &table, const FunctionWordList &fw) {
    if (table.total_tokens() == 0)
        throw EmptyTable("function-word share of an empty table (year " +
                         std::to_string(table.year()) + ")");
    std::uint64_t hits = 0;
    if (fw.size() < table.distinct_tokens()) {
        for (const auto &w : fw.words())
            hits += table.count_of(w);
    } else {
        for (const auto &[token, count] : table.counts())
            if (fw.contains(token))
                hits += count;
    }
    return static_cast<double>(hits) / static_cast<double>(table.total_tokens());
}

double content_share(const ingest::FrequencyTable &table, const FunctionWordList &fw) {
    return 1.0 - function_word_share(table, fw);
}

std::vector<fit::Point> to_fit_points(const GrowthCurve &curve) {
    std::vector<fit::Point> pts;
    pts.reserve(curve.size());
    for (const auto &p : curve.points())
        pts.push_back({static_cast<double>(p.tokens), static_cast<double>(p.distinct)});
    return pts;
}

HeapsSeries sliding_heaps(const GrowthCurve &curve, int window_years, int step) {
    if (window_years < 1 || step < 1)
        throw std::invalid_argument("window width and step must be positive");
    HeapsSeries series;
    if (curve.empty())
        throw InsufficientData("empty growth curve");

    const auto pts = curve.points();
    std::size_t begin = 0;
    for (Year start = curve.first_year(); start + window_years - 1 <= curve.last_year();
         start += step) {
        const Year stop = start + window_years - 1;
        while (begin < pts.size() && pts[begin].year < start)
            ++begin;
        std::vector<fit::Point> window;
        for (std::size_t i = begin; i < pts.size() && pts[i].year <= stop; ++i)
            window.push_back({static_cast<double>(pts[i].tokens), static_cast<double>(pts[i].distinct)});

        const Year center = window_center(start, window_years);
        if (window.size() < kMinWindowPoints) {
            series.skipped_centers.push_back(center);
            continue;
        }
        try {
            auto fit = fit::fit_powerlaw_ls(window);
            series.points.push_back({center, fit.exponent, fit});
        } catch (const InsufficientPoints &) {
            // every point in the window shares one L
            series.skipped_centers.push_back(center);
        }
    }
    if (series.points.empty())
        throw InsufficientData("no " + std::to_string(window_years) +
                               "-year window contains at least 3 points");
    return series;
}

GrowthCurve window_extract(const GrowthCurve &curve, Year center_year, int half_width) {
    if (half_width < 0)
        throw std::invalid_argument("half width must be non-negative");
    if (curve.empty() || center_year < curve.first_year() || center_year > curve.last_year())
        throw EmptyRange("center year " + std::to_string(center_year) + " outside the curve");
    std::vector<GrowthPoint> sub;
    for (const auto &p : curve.points())
        if (p.year >= center_year - half_width && p.year <= center_year + half_width)
            sub.push_back(p);
    if (sub.empty())
        throw EmptyRange("no points within " + std::to_string(half_width) + " years of " +
                         std::to_string(center_year));
    return GrowthCurve(std::move(sub));
}

} // namespace heapscope::growth
