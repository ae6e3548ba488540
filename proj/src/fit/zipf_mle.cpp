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
#include <vector>

#include "heapscope/detail/summation.hpp"
#include "heapscope/fit.hpp"

namespace heapscope::fit {

namespace {

// Log-likelihood over ranks r_lo..r_hi, l(beta) = -beta sum n_r ln r - T ln H(beta).
// With d_r = ln r - ln r_lo and G(beta) = sum exp(-beta d_r) the ln r_lo terms
// cancel, l(beta) = -beta sum n_r d_r - T ln G(beta), and exp(-beta d_r) never
// underflows for the ranks that dominate G.
class RangeLikelihood {
  public:
    RangeLikelihood(const RankFrequency &rf, std::size_t r_lo, std::size_t r_hi) {
        if (r_lo < 1 || r_hi <= r_lo)
            throw InsufficientPoints("Zipf fit needs 1 <= r_lo < r_hi, got " +
                                     std::to_string(r_lo) + ":" + std::to_string(r_hi));
        if (r_hi > rf.max_rank())
            throw InsufficientPoints("Zipf fit range ends at rank " + std::to_string(r_hi) +
                                     " but the table has " + std::to_string(rf.max_rank()) +
                                     " ranks");
        const double ln_lo = std::log(static_cast<double>(r_lo));
        log_r_lo_ = ln_lo;
        shifted_.reserve(r_hi - r_lo + 1);
        detail::CompensatedSum d;
        for (std::size_t r = r_lo; r <= r_hi; ++r) {
            const double dr = std::log(static_cast<double>(r)) - ln_lo;
            const auto n = static_cast<double>(rf.count_at(r));
            shifted_.push_back(dr);
            d.add(n * dr);
            total_ += n;
        }
        weighted_shift_ = d.value();
    }

    double total() const noexcept { return total_; }

    // ln G(beta) and, optionally, G'(beta)/G(beta) = -E_beta[d].
    double log_g(double beta, double *mean_shift = nullptr) const {
        detail::CompensatedSum g;
        detail::CompensatedSum gd;
        for (double dr : shifted_) {
            const double w = std::exp(-beta * dr);
            g.add(w);
            if (mean_shift)
                gd.add(w * dr);
        }
        if (mean_shift)
            *mean_shift = gd.value() / g.value();
        return std::log(g.value());
    }

    double log_likelihood(double beta) const {
        return -beta * weighted_shift_ - total_ * log_g(beta);
    }

    double derivative(double beta) const {
        double mean_shift = 0.0;
        log_g(beta, &mean_shift);
        return -weighted_shift_ + total_ * mean_shift;
    }

    double log_prefactor(double beta) const {
        // -ln H(beta)
        return beta * log_r_lo_ - log_g(beta);
    }

  private:
    std::vector<double> shifted_;
    double weighted_shift_ = 0.0;
    double total_ = 0.0;
    double log_r_lo_ = 0.0;
};

PowerLawFit make_fit(const RangeLikelihood &lik, double beta, std::size_t r_lo, std::size_t r_hi) {
    PowerLawFit fit;
    fit.method = FitMethod::MleMultinomial;
    fit.exponent = beta;
    fit.log_prefactor = lik.log_prefactor(beta);
    fit.range_lo = static_cast<double>(r_lo);
    fit.range_hi = static_cast<double>(r_hi);
    fit.diagnostic = lik.log_likelihood(beta);
    fit.n_points = r_hi - r_lo + 1;
    return fit;
}

// f(b) must not fall below the chord through (a, fa) and (c, fc).
void check_concave(double a, double fa, double b, double fb, double c, double fc) {
    const double chord = fa + (b - a) / (c - a) * (fc - fa);
    const double tol = 1e-12 * (1.0 + std::fabs(fa) + std::fabs(fb) + std::fabs(fc));
    if (fb < chord - tol)
        throw NonConcaveObjective("Zipf log-likelihood is not concave near beta=" + std::to_string(b));
}

} // namespace

double zipf_log_likelihood(const RankFrequency &rf, std::size_t r_lo, std::size_t r_hi,
                           double beta) {
    return RangeLikelihood(rf, r_lo, r_hi).log_likelihood(beta);
}

PowerLawFit fit_zipf_mle(const RankFrequency &rf, std::size_t r_lo, std::size_t r_hi,
                         const ZipfSearch &search) {
    const RangeLikelihood lik(rf, r_lo, r_hi);

    // The likelihood is concave, so the derivative sign at the ends of the
    // search interval decides whether the maximum is interior.
    if (lik.derivative(search.beta_lo) <= 0.0)
        throw NoInteriorMaximum("Zipf likelihood maximum at lower search bound beta=" +
                                    std::to_string(search.beta_lo),
                                make_fit(lik, search.beta_lo, r_lo, r_hi));
    if (lik.derivative(search.beta_hi) >= 0.0)
        throw NoInteriorMaximum("Zipf likelihood maximum at upper search bound beta=" +
                                    std::to_string(search.beta_hi),
                                make_fit(lik, search.beta_hi, r_lo, r_hi));

    // Golden-section search narrows the bracket, checking concavity on the way.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = search.beta_lo;
    double b = search.beta_hi;
    double fa = lik.log_likelihood(a);
    double fb = lik.log_likelihood(b);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = lik.log_likelihood(c);
    double fd = lik.log_likelihood(d);
    constexpr double kGoldenWidth = 1e-3;
    while (b - a > kGoldenWidth) {
        check_concave(a, fa, c, fc, d, fd);
        check_concave(c, fc, d, fd, b, fb);
        if (fc >= fd) {
            b = d;
            fb = fd;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = lik.log_likelihood(c);
        } else {
            a = c;
            fa = fc;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = lik.log_likelihood(d);
        }
    }

    // Bisection on the derivative sign, widened back to the search interval if
    // the golden bracket lost the sign change to rounding.
    if (lik.derivative(a) <= 0.0)
        a = search.beta_lo;
    if (lik.derivative(b) >= 0.0)
        b = search.beta_hi;
    while (b - a > search.tolerance) {
        const double mid = 0.5 * (a + b);
        if (lik.derivative(mid) > 0.0)
            a = mid;
        else
            b = mid;
    }
    return make_fit(lik, 0.5 * (a + b), r_lo, r_hi);
}

} // namespace heapscope::fit
