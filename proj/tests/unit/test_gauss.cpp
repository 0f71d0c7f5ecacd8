#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "extendo/error.hpp"
#include "extendo/gauss.hpp"
#include "reference.hpp"

using namespace extendo;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST(NormCdf, KnownValues) {
    EXPECT_EQ(norm_cdf(0.0), 0.5);
    EXPECT_EQ(norm_cdf(-inf), 0.0);
    EXPECT_EQ(norm_cdf(inf), 1.0);
    EXPECT_NEAR(norm_cdf(1.96), 0.97500210485177956586, 1e-15);
    EXPECT_NEAR(norm_cdf(-40.0), 0.0, 1e-300);
    EXPECT_THROW(norm_cdf(NAN), InputError);
}

TEST(NormQuantile, RoundTrips) {
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.8, 0.999999}) {
        EXPECT_NEAR(norm_cdf(norm_quantile(p)), p, 4e-16 + 1e-13 * p) << p;
    }
}

TEST(Correlation, RejectsOutOfRange) {
    EXPECT_THROW(Correlation(1.0000001), InputError);
    EXPECT_THROW(Correlation(NAN), InputError);
    EXPECT_EQ((-Correlation(0.3)).value(), -0.3);
}

TEST(BvnCdf, ClosedFormCases) {
    EXPECT_NEAR(bvn_cdf(0, 0, Correlation(0)), 0.25, 1e-16);
    EXPECT_NEAR(bvn_cdf(0, 0, Correlation(0.5)), 1.0 / 3.0, 1e-16);
    for (double rho : {-0.99, -0.5, 0.0, 0.7, 0.95}) {
        EXPECT_NEAR(bvn_cdf(0.3, inf, Correlation(rho)), norm_cdf(0.3), 1e-16);
        EXPECT_NEAR(bvn_cdf(inf, -1.2, Correlation(rho)), norm_cdf(-1.2), 1e-16);
        EXPECT_EQ(bvn_cdf(-inf, 0.4, Correlation(rho)), 0.0);
    }
    EXPECT_NEAR(bvn_cdf(0.3, -0.2, Correlation(1.0)), norm_cdf(-0.2), 1e-16);
    EXPECT_NEAR(bvn_cdf(0.3, -0.2, Correlation(-1.0)), norm_cdf(0.3) + norm_cdf(-0.2) - 1.0, 1e-16);
    EXPECT_EQ(bvn_cdf(-0.3, -0.2, Correlation(-1.0)), 0.0);
    EXPECT_THROW(bvn_cdf(NAN, 0.0, Correlation(0.1)), InputError);
}

TEST(BvnCdf, MatchesQuadrature) {
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double a = ref::uniform(rng, -5, 5);
        const double b = ref::uniform(rng, -5, 5);
        const double rho = ref::uniform(rng, -0.999, 0.999);
        worst = std::max(worst, std::abs(bvn_cdf(a, b, Correlation(rho)) - ref::bvn_by_quadrature(a, b, rho)));
    }
    EXPECT_LT(worst, 5e-15);
}

TEST(BvnCdf, ComplementIdentity) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double a = ref::uniform(rng, -6, 6);
        const double b = ref::uniform(rng, -6, 6);
        const Correlation rho(ref::uniform(rng, -1, 1));
        EXPECT_NEAR(bvn_cdf(a, b, rho) + bvn_cdf(a, -b, -rho), norm_cdf(a), 1e-14);
    }
}

TEST(BvnCdf, MonotoneInEachArgument) {
    const double step = 0.05;
    for (double rho : {-0.95, -0.3, 0.0, 0.6, 0.93}) {
        for (double x = -4; x < 4; x += step) {
            for (double y : {-2.0, 0.0, 1.5}) {
                EXPECT_LE(bvn_cdf(x, y, Correlation(rho)), bvn_cdf(x + step, y, Correlation(rho)));
                EXPECT_LE(bvn_cdf(y, x, Correlation(rho)), bvn_cdf(y, x + step, Correlation(rho)));
            }
        }
    }
    for (double a : {-1.0, 0.2, 2.0}) {
        for (double r = -0.99; r < 0.98; r += 0.01) {
            EXPECT_LE(bvn_cdf(a, 0.5, Correlation(r)), bvn_cdf(a, 0.5, Correlation(r + 0.01)) + 1e-16);
        }
    }
}

TEST(IntervalProb, Values) {
    EXPECT_EQ(interval_prob(-inf, inf), 1.0);
    EXPECT_EQ(interval_prob(0.7, 0.7), 0.0);
    EXPECT_NEAR(interval_prob(-1.96, 1.96), 0.95000420970355913173, 1e-15);
    EXPECT_THROW(interval_prob(1.0, 0.0), InputError);
}

TEST(RectProb, Values) {
    EXPECT_EQ(rect_prob(0.4, 0.4, -1, 2, Correlation(0.5)), 0.0);
    EXPECT_NEAR(rect_prob(-inf, inf, -inf, inf, Correlation(-0.4)), 1.0, 1e-16);
    EXPECT_NEAR(rect_prob(-0.5, 1.2, -2, 0.3, Correlation(0.0)), interval_prob(-0.5, 1.2) * interval_prob(-2, 0.3),
                1e-16);
    EXPECT_THROW(rect_prob(0, 1, 1, 0, Correlation(0)), InputError);
    EXPECT_THROW(rect_prob(1, 0, 0, 1, Correlation(0)), InputError);
}

TEST(RectProb, ReflectionSymmetry) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        double a = ref::uniform(rng, -5, 5), b = ref::uniform(rng, -5, 5);
        double c = ref::uniform(rng, -5, 5), d = ref::uniform(rng, -5, 5);
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        const Correlation rho(ref::uniform(rng, -1, 1));
        EXPECT_NEAR(rect_prob(a, b, c, d, rho), rect_prob(-b, -a, c, d, -rho), 1e-14);
    }
}
