#pragma once

// Test-only reference implementations. Nothing here calls into the library's pricing
// code, so they can serve as independent oracles.

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ref {

inline double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Textbook Black-Scholes with continuous yield q.
inline double black_scholes(bool call, double spot, double strike, double r, double q, double sigma, double tenor) {
    const double sd = sigma * std::sqrt(tenor);
    const double d1 = (std::log(spot / strike) + (r - q + 0.5 * sigma * sigma) * tenor) / sd;
    const double d2 = d1 - sd;
    if (call) return spot * std::exp(-q * tenor) * phi(d1) - strike * std::exp(-r * tenor) * phi(d2);
    return strike * std::exp(-r * tenor) * phi(-d2) - spot * std::exp(-q * tenor) * phi(-d1);
}

/// Plain bisection on a sign change, run until the bracket stops shrinking.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Adaptive 61-point Gauss-Kronrod on a possibly infinite interval.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

inline double bivariate_density(double x, double y, double rho) {
    const double det = 1.0 - rho * rho;
    return std::exp(-(x * x - 2.0 * rho * x * y + y * y) / (2.0 * det)) / (2.0 * M_PI * std::sqrt(det));
}

/// P(Z1 <= a, Z2 <= b) by one-dimensional quadrature of the conditional law.
inline double bvn_by_quadrature(double a, double b, double rho) {
    const double s = std::sqrt(1.0 - rho * rho);
    return integrate([&](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI) * phi((b - rho * x) / s); },
                     -std::numeric_limits<double>::infinity(), a);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace ref
