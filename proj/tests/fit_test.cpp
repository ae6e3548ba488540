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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heapscope/fit.hpp"

using namespace heapscope;
using namespace heapscope::fit;

namespace {

std::vector<std::uint64_t> power_counts(double beta, std::size_t ranks, double scale) {
    std::vector<std::uint64_t> counts;
    for (std::size_t r = 1; r <= ranks; ++r)
        counts.push_back(static_cast<std::uint64_t>(std::llround(scale * std::pow(static_cast<double>(r), -beta))));
    return counts;
}

// Brute-force argmax of the log-likelihood on a fine grid.
double grid_argmax(const RankFrequency &rf, std::size_t lo, std::size_t hi, double a, double b, int steps) {
    double best = a, best_ll = -INFINITY;
    for (int i = 0; i <= steps; ++i) {
        const double beta = a + (b - a) * i / steps;
        const double ll = zipf_log_likelihood(rf, lo, hi, beta);
        if (ll > best_ll) {
            best_ll = ll;
            best = beta;
        }
    }
    return best;
}

} // namespace

// ============================================================================
// rank_table
// ============================================================================

TEST(RankTable, TieBreakByBytes) {
    auto rf = rank_table(ingest::FrequencyTable(2000, {{"c", 2}, {"a", 5}, {"b", 2}}));
    ASSERT_EQ(rf.max_rank(), 3u);
    EXPECT_EQ(rf.count_at(1), 5u);
    EXPECT_EQ(rf.count_at(2), 2u);
    EXPECT_EQ(rf.count_at(3), 2u);
    EXPECT_EQ(rf.tokens()[1], "b");
    EXPECT_EQ(rf.tokens()[2], "c");
    EXPECT_EQ(rf.total_tokens(), 9u);
}

TEST(RankTable, SingleToken) {
    auto rf = rank_table(ingest::FrequencyTable(2000, {{"a", 7}}));
    ASSERT_EQ(rf.max_rank(), 1u);
    EXPECT_EQ(rf.count_at(1), 7u);
}

TEST(RankTable, EmptyTable) { EXPECT_THROW(rank_table(ingest::FrequencyTable(2000, {})), EmptyTable); }

TEST(RankFrequency, Invariants) {
    EXPECT_THROW(RankFrequency({1, 2}), std::invalid_argument);
    EXPECT_THROW(RankFrequency({2, 0}), std::invalid_argument);
    EXPECT_THROW(RankFrequency({2, 1}, {"a"}), std::invalid_argument);
}

TEST(RankTsv, Parses) {
    auto rf = parse_rank_tsv("# rank\tcount\n1\t10\n2\t4\n3\t4\n");
    EXPECT_EQ(rf.max_rank(), 3u);
    EXPECT_THROW(parse_rank_tsv("1\t10\n3\t4\n"), MalformedRecord);
    EXPECT_THROW(parse_rank_tsv("1\t10\n2\t40\n"), MalformedRecord);
    EXPECT_THROW(parse_rank_tsv("1 10\n"), MalformedRecord);
}

// ============================================================================
// fit_powerlaw_ls
// ============================================================================

TEST(FitPowerlawLs, ExactPowerLaw) {
    std::vector<Point> pts;
    for (int i = 0; i < 30; ++i) {
        const double x = std::pow(10.0, 0.3 * i);
        pts.push_back({x, 2.0 * std::pow(x, 0.55)});
    }
    auto f = fit_powerlaw_ls(pts);
    EXPECT_NEAR(f.exponent, 0.55, 1e-12);
    EXPECT_NEAR(f.log_prefactor, std::log(2.0), 1e-12);
    EXPECT_LT(f.diagnostic, 1e-24);
    EXPECT_EQ(f.method, FitMethod::LsLogLog);
    EXPECT_EQ(f.n_points, 30u);
}

TEST(FitPowerlawLs, TwoPoints) {
    std::vector<Point> pts = {{1, 1}, {10, 10}};
    auto f = fit_powerlaw_ls(pts);
    EXPECT_DOUBLE_EQ(f.exponent, 1.0);
    EXPECT_EQ(f.range_lo, 1.0);
    EXPECT_EQ(f.range_hi, 10.0);
}

TEST(FitPowerlawLs, RangeFilter) {
    std::vector<Point> pts = {{1, 1}, {10, 10}, {100, 20}, {1000, 40}};
    auto f = fit_powerlaw_ls(pts, Range{50, 5000});
    EXPECT_NEAR(f.exponent, std::log(2.0) / std::log(10.0), 1e-12);
    EXPECT_EQ(f.n_points, 2u);
}

TEST(FitPowerlawLs, Errors) {
    std::vector<Point> one = {{1, 1}};
    EXPECT_THROW(fit_powerlaw_ls(one), InsufficientPoints);
    std::vector<Point> same_x = {{2, 1}, {2, 3}};
    EXPECT_THROW(fit_powerlaw_ls(same_x), InsufficientPoints);
    std::vector<Point> zero = {{1, 1}, {2, 0}};
    EXPECT_THROW(fit_powerlaw_ls(zero), NonPositiveValue);
    std::vector<Point> neg = {{-1, 1}, {2, 2}, {3, 3}};
    EXPECT_THROW(fit_powerlaw_ls(neg), NonPositiveValue);
    // Out-of-range points are never inspected.
    EXPECT_NO_THROW(fit_powerlaw_ls(neg, Range{1, 10}));
}

TEST(FitPowerlawLs, SlopeInvariantUnderRescaling) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(1.0, 1e6), noise(0.8, 1.2), scale(1e-3, 1e3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Point> pts, sx, sy;
        const double a = scale(rng), b = scale(rng);
        for (int i = 0; i < 20; ++i) {
            const double x = u(rng);
            const double y = std::pow(x, 0.6) * noise(rng);
            pts.push_back({x, y});
            sx.push_back({a * x, y});
            sy.push_back({x, b * y});
        }
        const double k = fit_powerlaw_ls(pts).exponent;
        EXPECT_NEAR(fit_powerlaw_ls(sx).exponent, k, 1e-10);
        EXPECT_NEAR(fit_powerlaw_ls(sy).exponent, k, 1e-10);
    }
}

// ============================================================================
// fit_zipf_mle
// ============================================================================

TEST(FitZipfMle, RecoversExactExponent) {
    RankFrequency rf(power_counts(1.25, 1000, 1e12));
    auto f = fit_zipf_mle(rf, 1, 1000);
    EXPECT_NEAR(f.exponent, 1.25, 1e-3);
    EXPECT_EQ(f.method, FitMethod::MleMultinomial);
    EXPECT_EQ(f.n_points, 1000u);
    EXPECT_EQ(f.range_lo, 1.0);
    EXPECT_EQ(f.range_hi, 1000.0);
    EXPECT_NEAR(f.diagnostic, zipf_log_likelihood(rf, 1, 1000, f.exponent), 1e-6 * std::fabs(f.diagnostic));
}

TEST(FitZipfMle, PrefactorNormalizesRange) {
    RankFrequency rf(power_counts(1.1, 500, 1e9));
    auto f = fit_zipf_mle(rf, 3, 440);
    double mass = 0;
    for (int r = 3; r <= 440; ++r)
        mass += std::exp(f.log_prefactor - f.exponent * std::log(r));
    EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(FitZipfMle, MatchesBruteForceGrid) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::uint64_t> counts;
        std::uint64_t c = 100000;
        for (int r = 0; r < 300; ++r) {
            counts.push_back(c);
            c = std::max<std::uint64_t>(1, c - rng() % (c / 10 + 2));
        }
        RankFrequency rf(counts);
        const std::size_t lo = 1 + rng() % 20, hi = 100 + rng() % 200;
        auto f = fit_zipf_mle(rf, lo, hi);
        const double coarse = grid_argmax(rf, lo, hi, 0.05, 6.0, 5950);
        const double fine = grid_argmax(rf, lo, hi, coarse - 0.002, coarse + 0.002, 4000);
        EXPECT_NEAR(f.exponent, fine, 2e-6);
    }
}

TEST(FitZipfMle, UniformCountsHitLowerBoundary) {
    RankFrequency rf(std::vector<std::uint64_t>(100, 50));
    try {
        fit_zipf_mle(rf, 1, 100);
        FAIL() << "expected NoInteriorMaximum";
    } catch (const NoInteriorMaximum &e) {
        EXPECT_NEAR(e.fit().exponent, 0.05, 1e-12);
        EXPECT_EQ(e.fit().method, FitMethod::MleMultinomial);
    }
}

TEST(FitZipfMle, SteepCountsHitUpperBoundary) {
    RankFrequency rf({1000000000000ULL, 1});
    EXPECT_THROW(fit_zipf_mle(rf, 1, 2), NoInteriorMaximum);
}

TEST(FitZipfMle, RangeErrors) {
    RankFrequency rf(power_counts(1.0, 10, 1000));
    EXPECT_THROW(fit_zipf_mle(rf, 0, 5), InsufficientPoints);
    EXPECT_THROW(fit_zipf_mle(rf, 5, 5), InsufficientPoints);
    EXPECT_THROW(fit_zipf_mle(rf, 1, 11), InsufficientPoints);
}

TEST(FitZipfMle, InvariantUnderIntegerCountScaling) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const double beta = 0.6 + 0.1 * trial;
        auto counts = power_counts(beta, 400, 1e7);
        for (auto &c : counts)
            c += rng() % 3;
        std::sort(counts.rbegin(), counts.rend());
        auto scaled = counts;
        const std::uint64_t factor = 2 + rng() % 50;
        for (auto &c : scaled)
            c *= factor;
        const double a = fit_zipf_mle(RankFrequency(counts), 2, 400).exponent;
        const double b = fit_zipf_mle(RankFrequency(scaled), 2, 400).exponent;
        EXPECT_NEAR(a, b, 2e-8);
    }
}

TEST(FitZipfMle, LikelihoodConcaveOnData) {
    RankFrequency rf(power_counts(1.4, 2000, 1e10));
    double prev2 = zipf_log_likelihood(rf, 1, 2000, 0.05);
    double prev1 = zipf_log_likelihood(rf, 1, 2000, 0.06);
    for (double beta = 0.07; beta < 6.0; beta += 0.01) {
        const double cur = zipf_log_likelihood(rf, 1, 2000, beta);
        EXPECT_LE(cur - 2 * prev1 + prev2, 1e-9 * std::fabs(cur)) << beta;
        prev2 = prev1;
        prev1 = cur;
    }
}

// ============================================================================
// fit_report
// ============================================================================

TEST(FitReport, LsRecord) {
    std::vector<Point> pts = {{1, 1}, {10, 10}, {100, 90}};
    auto f = fit_powerlaw_ls(pts);
    auto j = fit_report(f);
    EXPECT_EQ(j.at("method"), "LS_LOGLOG");
    EXPECT_TRUE(j.contains("residual_sum_squares"));
    EXPECT_EQ(parse_fit_report(j), f);
}

TEST(FitReport, MleRecord) {
    auto f = fit_zipf_mle(RankFrequency(power_counts(1.2, 100, 1e6)), 1, 100);
    auto j = fit_report(f);
    EXPECT_EQ(j.at("method"), "MLE_MULTINOMIAL");
    EXPECT_TRUE(j.contains("log_likelihood"));
    EXPECT_EQ(parse_fit_report(nlohmann::json::parse(j.dump())), f);
}
