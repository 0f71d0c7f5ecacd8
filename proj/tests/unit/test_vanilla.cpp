#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "benchmark.hpp"
#include "extendo/error.hpp"
#include "extendo/vanilla.hpp"

using namespace extendo;

namespace {

PeriodParams benchmark_params() { return period_params(bench::flat_market(), 0.5, 1.0); }

}  // namespace

TEST(BsT0, FrozenValues) {
    const PeriodParams p = benchmark_params();
    EXPECT_NEAR(bs_t0(OptionKind::call, 100, 100, p).price, 9.0411753343981095692, 1e-12);
    EXPECT_NEAR(bs_t0(OptionKind::put, 100, 100, p).price, 5.1201192496304305131, 1e-12);
    EXPECT_NEAR(bs_t0(OptionKind::call, 100, 100, p).price,
                ref::black_scholes(true, 100, 100, 0.08, 0.0, 0.25, 0.5), 1e-12);
}

TEST(BsT1, FrozenValues) {
    const PeriodParams p = benchmark_params();
    const VanillaQuote c = bs_t1(OptionKind::call, 100, 105, p);
    EXPECT_NEAR(c.price, 6.641565226182967646, 1e-12);
    EXPECT_NEAR(bs_t1(OptionKind::put, 100, 105, p).price, 7.5244563371769046372, 1e-12);
    EXPECT_NEAR(c.d2, c.d1 - 0.25 * std::sqrt(0.5), 1e-15);
    EXPECT_THROW(bs_t1(OptionKind::call, 0.0, 105, p), InputError);
    EXPECT_THROW(bs_t1(OptionKind::call, 100, -1, p), InputError);
}

TEST(BsT1, MatchesTextbookOnConstantCurves) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const double r = ref::uniform(rng, -0.02, 0.1), q = ref::uniform(rng, -0.02, 0.1);
        const double sigma = ref::uniform(rng, 0.05, 0.6);
        const double t1 = ref::uniform(rng, 0.1, 2), t2 = t1 + ref::uniform(rng, 0.1, 2);
        const PeriodParams p = period_params(MarketData::constant(100, r, q, sigma, t2), t1, t2);
        const double x = ref::log_uniform(rng, 50, 200), k = ref::log_uniform(rng, 50, 200);
        EXPECT_NEAR(bs_t1(OptionKind::call, x, k, p).price, ref::black_scholes(true, x, k, r, q, sigma, t2 - t1),
                    1e-11 * x);
        EXPECT_NEAR(bs_t1(OptionKind::put, x, k, p).price, ref::black_scholes(false, x, k, r, q, sigma, t2 - t1),
                    1e-11 * x);
    }
}

TEST(Vanilla, PutCallParity) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 500; ++i) {
        const auto c = bench::random_case(rng);
        const PeriodParams p = period_params(c.market, c.spec.t1, c.spec.t2);
        const double x = ref::log_uniform(rng, 50, 200), k = c.spec.strike2;
        const double tau = p.tau();
        const double forward = x * std::exp((p.mu12 - p.r12) * tau) - k * std::exp(-p.r12 * tau);
        EXPECT_NEAR(bs_t1(OptionKind::call, x, k, p).price - bs_t1(OptionKind::put, x, k, p).price, forward, 1e-12 * x);
        const double k1 = c.spec.strike1, s = c.market.spot;
        const double forward0 = s * std::exp((p.mu1 - p.r1) * p.t1) - k1 * std::exp(-p.r1 * p.t1);
        EXPECT_NEAR(bs_t0(OptionKind::call, s, k1, p).price - bs_t0(OptionKind::put, s, k1, p).price, forward0,
                    1e-12 * s);
    }
}

TEST(Vanilla, Limits) {
    const PeriodParams p = benchmark_params();
    const double tau = p.tau();
    EXPECT_EQ(bs_t1(OptionKind::call, 1e-8, 105, p).price, 0.0);
    EXPECT_NEAR(bs_t1(OptionKind::put, 1e-8, 105, p).price, 105 * std::exp(-p.r12 * tau), 1e-8);
    const double big = 1e9;
    EXPECT_NEAR(bs_t0(OptionKind::call, big, 100, p).price, big * std::exp((p.mu1 - p.r1) * 0.5) - 100 * std::exp(-0.04),
                1e-6);
    EXPECT_EQ(bs_t0(OptionKind::put, big, 100, p).price, 0.0);
}

TEST(Vanilla, MonotoneAndConvexInSpot) {
    const PeriodParams p = benchmark_params();
    const double h = 0.5;
    for (double x = 20; x < 400; x += 1.0) {
        const double c0 = bs_t1(OptionKind::call, x - h, 105, p).price;
        const double c1 = bs_t1(OptionKind::call, x, 105, p).price;
        const double c2 = bs_t1(OptionKind::call, x + h, 105, p).price;
        EXPECT_GT(c2, c1);
        EXPECT_GE(c0 + c2 - 2 * c1, -1e-12);
        const double p0 = bs_t1(OptionKind::put, x - h, 105, p).price;
        const double p1 = bs_t1(OptionKind::put, x, 105, p).price;
        const double p2 = bs_t1(OptionKind::put, x + h, 105, p).price;
        if (p1 > 1e-12) EXPECT_LT(p2, p1);
        EXPECT_GE(p0 + p2 - 2 * p1, -1e-12);
        const double slope = bs_t1_delta(OptionKind::call, x, 105, p);
        EXPECT_GT(slope, 0.0);
        EXPECT_LE(slope, std::exp((p.mu12 - p.r12) * p.tau()));
    }
}

TEST(Vanilla, DeltaMatchesFiniteDifference) {
    const PeriodParams p = benchmark_params();
    for (double x : {60.0, 90.0, 105.0, 130.0, 180.0}) {
        for (OptionKind kind : {OptionKind::call, OptionKind::put}) {
            const double h = 1e-4 * x;
            const double fd = (bs_t1(kind, x + h, 105, p).price - bs_t1(kind, x - h, 105, p).price) / (2 * h);
            EXPECT_NEAR(bs_t1_delta(kind, x, 105, p), fd, 1e-7);
        }
    }
}

TEST(Vanilla, CallLessSpotIsStable) {
    const PeriodParams p = benchmark_params();
    for (double x : {1.0, 50.0, 100.0, 200.0}) {
        EXPECT_NEAR(bs_t1_call_less_spot(x, 105, p), bs_t1(OptionKind::call, x, 105, p).price - x, 1e-12 * x);
    }
    // Far in the money the naive difference loses every digit; the limit is -K2 e^{-r tau}.
    EXPECT_NEAR(bs_t1_call_less_spot(1e15, 105, p), -105 * std::exp(-0.04), 1e-12);
}

TEST(Vanilla, StandardizedLogLevel) {
    EXPECT_EQ(standardized_log_level(0.0, 100, 0.08, 0.25, 0.5), -std::numeric_limits<double>::infinity());
    EXPECT_EQ(standardized_log_level(std::numeric_limits<double>::infinity(), 100, 0.08, 0.25, 0.5),
              std::numeric_limits<double>::infinity());
    // K1 = X0 and mu = sigma^2 / 2 gives d = 0.
    EXPECT_NEAR(standardized_log_level(100, 100, 0.03125, 0.25, 0.5), 0.0, 1e-15);
}
