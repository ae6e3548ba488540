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

#ifndef HEAPSCOPE_DETAIL_SUMMATION_HPP
#define HEAPSCOPE_DETAIL_SUMMATION_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace heapscope::detail {

// Neumaier compensated summation.
class CompensatedSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Correctly rounded summation (Shewchuk's non-overlapping partials, as in
// Python's math.fsum). The result does not depend on the order of the addends,
// and add_scaled(x, m) is equivalent to m calls of add(x).
class ExactSum {
  public:
    void add(double x) {
        std::size_t i = 0;
        for (double y : partials_) {
            if (std::fabs(x) < std::fabs(y))
                std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0)
                partials_[i++] = lo;
            x = hi;
        }
        partials_.resize(i);
        partials_.push_back(x);
    }

    // Adds x * m exactly; m must be an integer below 2^53.
    void add_scaled(double x, double m) {
        const double p = x * m;
        const double e = std::fma(x, m, -p);
        add(p);
        if (e != 0.0)
            add(e);
    }

    double value() const {
        if (partials_.empty())
            return 0.0;
        std::size_t n = partials_.size();
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            lo = y - (hi - x);
            if (lo != 0.0)
                break;
        }
        // Round half to even across the remaining partials.
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi)
                hi = x;
        }
        return hi;
    }

  private:
    std::vector<double> partials_;
};

} // namespace heapscope::detail

#endif // HEAPSCOPE_DETAIL_SUMMATION_HPP
