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
#include <vector>

#include "heapscope/fit.hpp"

namespace heapscope::fit {

PowerLawFit fit_powerlaw_ls(std::span<const Point> points, std::optional<Range> x_range) {
    std::vector<double> lx;
    std::vector<double> ly;
    lx.reserve(points.size());
    ly.reserve(points.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto &p : points) {
        if (x_range && (p.x < x_range->lo || p.x > x_range->hi))
            continue;
        if (!(p.x > 0.0) || !(p.y > 0.0))
            throw NonPositiveValue("log-log fit needs positive values, got (" + std::to_string(p.x) +
                                   ", " + std::to_string(p.y) + ")");
        lx.push_back(std::log(p.x));
        ly.push_back(std::log(p.y));
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
    }
    const auto n = lx.size();
    if (n < 2)
        throw InsufficientPoints("log-log fit needs at least 2 points in range, got " +
                                 std::to_string(n));

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx;
        sxx += dx * dx;
        sxy += dx * (ly[i] - my);
    }
    if (!(sxx > 0.0))
        throw InsufficientPoints("log-log fit needs at least 2 distinct x values");

    PowerLawFit fit;
    fit.method = FitMethod::LsLogLog;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
        rss += r * r;
    }
    fit.diagnostic = rss;
    fit.range_lo = lo;
    fit.range_hi = hi;
    fit.n_points = n;
    return fit;
}

} // namespace heapscope::fit
