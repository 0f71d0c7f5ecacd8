#include "extendo/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "extendo/error.hpp"
#include "extendo/gauss.hpp"

namespace extendo {

void ContractSpec::validate() const {
    auto fail = [](const std::string& what) { throw InputError(InputErrorCode::invalid_contract, what); };
    if (!(strike1 > 0.0) || !std::isfinite(strike1)) fail("K1 must be positive and finite");
    if (!(strike2 > 0.0) || !std::isfinite(strike2)) fail("K2 must be positive and finite");
    if (!(t1 > 0.0) || !std::isfinite(t1)) fail("T1 must be positive and finite");
    if (!(t2 > t1) || !std::isfinite(t2)) fail("T2 must be finite and greater than T1");
    if (!(fee >= 0.0) || !std::isfinite(fee)) fail("extension fee A must be non-negative and finite");
}

RootResult solve_bracketed(const ValueAndSlope& f, double lo, double hi, double residual_tol) {
    if (!(lo < hi)) throw NumericError("empty bracket", lo, hi);
    double flo = f(lo).first;
    const double fhi = f(hi).first;
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if (std::signbit(flo) == std::signbit(fhi)) throw NumericError("root is not bracketed", lo, hi);

    double x = 0.5 * (lo + hi);
    double step = hi - lo;
    double step_before = step;
    for (int it = 1; it <= SolverTolerance::max_iterations; ++it) {
        const auto [fx, slope] = f(x);
        if (!std::isfinite(fx)) throw NumericError("non-finite function value", lo, hi);
        if (fx == 0.0) return {x, 0.0, it};
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double width_tol = SolverTolerance::relative_width * 0.5 * (lo + hi);
        if (std::abs(fx) <= residual_tol && hi - lo <= width_tol) return {x, std::abs(fx), it};

        double next = 0.5 * (lo + hi);
        if (slope != 0.0 && std::isfinite(slope)) {
            double newton = -fx / slope;
            // Probe just past the Newton target so the far side of the bracket closes in.
            if (std::abs(newton) < 0.5 * width_tol) newton = std::copysign(0.5 * width_tol, newton);
            const double candidate = x + newton;
            if (candidate > lo && candidate < hi && std::abs(newton) <= 0.5 * std::abs(step_before)) {
                next = candidate;
            }
        }
        step_before = step;
        step = next - x;
        x = next;
    }
    std::ostringstream msg;
    msg << "critical value search did not converge in " << SolverTolerance::max_iterations
        << " iterations; last bracket [" << lo << ", " << hi << "]";
    throw NumericError(msg.str(), lo, hi);
}

namespace {

double grid_point(double strike2, int k) { return std::ldexp(strike2, k); }

// Scans the grid K2 * 2^k from the low end upward and returns the first interval where
// f changes sign relative to its value at the bottom. Returns nullopt when f keeps
// its sign everywhere; sets sign_at_bottom.
std::optional<std::pair<double, double>> scan_upward(const ValueAndSlope& f, double strike2,
                                                     bool& negative_at_bottom) {
    const int n = SolverTolerance::max_doublings;
    double prev = grid_point(strike2, -n);
    const double f0 = f(prev).first;
    negative_at_bottom = f0 < 0.0;
    for (int k = -n + 1; k <= n; ++k) {
        const double x = grid_point(strike2, k);
        if ((f(x).first < 0.0) != negative_at_bottom) return std::make_pair(prev, x);
        prev = x;
    }
    return std::nullopt;
}

// Mirror image of scan_upward: starts at the top of the grid and walks down.
std::optional<std::pair<double, double>> scan_downward(const ValueAndSlope& f, double strike2,
                                                       bool& negative_at_top) {
    const int n = SolverTolerance::max_doublings;
    double prev = grid_point(strike2, n);
    const double f0 = f(prev).first;
    negative_at_top = f0 < 0.0;
    for (int k = n - 1; k >= -n; --k) {
        const double x = grid_point(strike2, k);
        if ((f(x).first < 0.0) != negative_at_top) return std::make_pair(x, prev);
        prev = x;
    }
    return std::nullopt;
}

double residual_tolerance(const ContractSpec& spec) {
    return SolverTolerance::residual_scale * std::max(1.0, spec.strike2);
}

// Closed set [lo, hi] of levels where the extension-vs-exercise difference is <= 0.
struct Gap {
    CriticalValue lo;
    CriticalValue hi;
    double lo_residual = 0.0;
    double hi_residual = 0.0;
};

// Level where the convex extension-vs-exercise difference has zero slope, if it has
// one. The slope is delta - 1 for the call and delta + 1 for the put, and reaches
// zero only when the forward growth factor g = e^{(mu12 - r12) tau} exceeds 1.
std::optional<double> exercise_minimizer(OptionKind kind, double strike2, const PeriodParams& p) {
    const double tau = p.tau();
    const double g = std::exp((p.mu12 - p.r12) * tau);
    if (!(g > 1.0)) return std::nullopt;
    const double z = norm_quantile(1.0 / g);
    const double d1 = kind == OptionKind::call ? z : -z;
    const double sd = p.sd12();
    return strike2 * std::exp(d1 * sd - (p.mu12 + 0.5 * p.sigma12 * p.sigma12) * tau);
}

// Negative set of a convex function with an interior minimum at x_star.
std::optional<Gap> convex_gap(const ValueAndSlope& f, double strike2, double x_star, double tol) {
    const double f_min = f(x_star).first;
    if (f_min >= -tol) return std::nullopt;
    const double bottom = grid_point(strike2, -SolverTolerance::max_doublings);
    const double top = grid_point(strike2, SolverTolerance::max_doublings);
    Gap gap{CriticalValue::zero(), CriticalValue::infinite()};

    for (double prev = x_star, x = 0.5 * x_star; x >= bottom; prev = x, x *= 0.5) {
        if (f(x).first >= 0.0) {
            const auto root = solve_bracketed(f, x, prev, tol);
            gap.lo = CriticalValue::at(root.root);
            gap.lo_residual = root.residual;
            break;
        }
    }
    for (double prev = x_star, x = 2.0 * x_star; x <= top; prev = x, x *= 2.0) {
        if (f(x).first >= 0.0) {
            const auto root = solve_bracketed(f, prev, x, tol);
            gap.hi = CriticalValue::at(root.root);
            gap.hi_residual = root.residual;
            break;
        }
    }
    return gap;
}

// Negative set of a decreasing function: [root, inf), everything, or empty.
std::optional<Gap> decreasing_gap(const ValueAndSlope& f, double strike2, double tol) {
    bool negative_at_top = false;
    const auto bracket = scan_downward(f, strike2, negative_at_top);
    if (!negative_at_top) return std::nullopt;
    if (!bracket) return Gap{CriticalValue::zero(), CriticalValue::infinite()};
    const auto root = solve_bracketed(f, bracket->first, bracket->second, tol);
    return Gap{CriticalValue::at(root.root), CriticalValue::infinite(), root.residual, 0.0};
}

// Negative set of an increasing function: (0, root], everything, or empty.
std::optional<Gap> increasing_gap(const ValueAndSlope& f, double strike2, double tol) {
    bool negative_at_bottom = false;
    const auto bracket = scan_upward(f, strike2, negative_at_bottom);
    if (!negative_at_bottom) return std::nullopt;
    if (!bracket) return Gap{CriticalValue::zero(), CriticalValue::infinite()};
    const auto root = solve_bracketed(f, bracket->first, bracket->second, tol);
    return Gap{CriticalValue::zero(), CriticalValue::at(root.root), 0.0, root.residual};
}

// Removes the gap from the extension-vs-abandonment interval already stored in out.
void remove_gap(DecisionBoundaries& out, const std::optional<Gap>& gap) {
    if (!gap) return;
    const double lo = out.lower.level();
    const double hi = out.upper.level();
    const double g_lo = gap->lo.level();
    const double g_hi = gap->hi.level();
    if (g_hi <= lo || g_lo >= hi) return;
    const bool cuts_low = g_lo <= lo;
    const bool cuts_high = g_hi >= hi;
    if (cuts_low && cuts_high) {
        out.never_extended = true;
    } else if (cuts_low) {
        out.lower = gap->hi;
        out.lower_residual = gap->hi_residual;
    } else if (cuts_high) {
        out.upper = gap->lo;
        out.upper_residual = gap->lo_residual;
    } else {
        out.pocket = ExercisePocket{g_lo, g_hi, gap->lo_residual, gap->hi_residual};
    }
}

}  // namespace

std::vector<std::pair<double, double>> extension_intervals(const DecisionBoundaries& b) {
    if (b.never_extended) return {};
    if (b.pocket) return {{b.lower.level(), b.pocket->lower}, {b.pocket->upper, b.upper.level()}};
    return {{b.lower.level(), b.upper.level()}};
}

DecisionBoundaries solve_call_boundaries(const ContractSpec& spec, const PeriodParams& params) {
    spec.validate();
    const double k1 = spec.strike1;
    const double k2 = spec.strike2;
    const double fee = spec.fee;
    const double tol = residual_tolerance(spec);

    const ValueAndSlope extend_vs_abandon = [&](double x) {
        return std::make_pair(bs_t1(OptionKind::call, x, k2, params).price - fee,
                              bs_t1_delta(OptionKind::call, x, k2, params));
    };
    const ValueAndSlope extend_vs_exercise = [&](double x) {
        return std::make_pair(bs_t1_call_less_spot(x, k2, params) + k1 - fee,
                              bs_t1_delta(OptionKind::call, x, k2, params) - 1.0);
    };

    // C is increasing, so extension beats abandonment on (I1, inf).
    DecisionBoundaries out;
    out.upper = CriticalValue::infinite();
    if (fee == 0.0) {
        out.lower = CriticalValue::zero();
    } else {
        bool negative_at_bottom = false;
        auto bracket = scan_upward(extend_vs_abandon, k2, negative_at_bottom);
        if (!negative_at_bottom) {
            out.lower = CriticalValue::zero();
        } else if (!bracket) {
            out.lower = CriticalValue::infinite();
            out.upper = CriticalValue::none();
            out.never_extended = true;
            return out;
        } else {
            const auto root = solve_bracketed(extend_vs_abandon, bracket->first, bracket->second, tol);
            out.lower = CriticalValue::at(root.root);
            out.lower_residual = root.residual;
        }
    }

    const auto x_star = exercise_minimizer(OptionKind::call, k2, params);
    auto gap = x_star ? convex_gap(extend_vs_exercise, k2, *x_star, tol) : decreasing_gap(extend_vs_exercise, k2, tol);
    // At I1 >= K1 exercise is worth I1 - K1 >= A = C(I1) - A + A: I1 lies in the gap.
    if (out.lower.is_finite() && out.lower.level() >= k1) {
        if (!gap) gap = Gap{out.lower, out.lower};
        if (gap->lo.level() > out.lower.level()) gap->lo = out.lower;
    }
    remove_gap(out, gap);
    if (out.never_extended) {
        out.upper = CriticalValue::none();
        out.upper_residual = 0.0;
    }
    return out;
}

DecisionBoundaries solve_put_boundaries(const ContractSpec& spec, const PeriodParams& params) {
    spec.validate();
    const double k1 = spec.strike1;
    const double k2 = spec.strike2;
    const double fee = spec.fee;
    const double tol = residual_tolerance(spec);
    const double put_at_zero = k2 * std::exp(-params.r12 * params.tau());

    const ValueAndSlope extend_vs_exercise = [&](double x) {
        return std::make_pair(bs_t1(OptionKind::put, x, k2, params).price - k1 + x - fee,
                              bs_t1_delta(OptionKind::put, x, k2, params) + 1.0);
    };
    const ValueAndSlope extend_vs_abandon = [&](double x) {
        return std::make_pair(bs_t1(OptionKind::put, x, k2, params).price - fee,
                              bs_t1_delta(OptionKind::put, x, k2, params));
    };

    // P is decreasing from K2 e^{-r12 tau}, so extension beats abandonment on (0, I2).
    DecisionBoundaries out;
    out.lower = CriticalValue::zero();
    if (fee == 0.0) {
        out.upper = CriticalValue::infinite();
    } else if (fee >= put_at_zero) {
        out.never_extended = true;
        out.lower = CriticalValue::none();
        return out;
    } else {
        bool negative_at_top = false;
        auto bracket = scan_downward(extend_vs_abandon, k2, negative_at_top);
        if (!negative_at_top) {
            out.upper = CriticalValue::infinite();
        } else if (!bracket) {
            out.never_extended = true;
            out.lower = CriticalValue::none();
            return out;
        } else {
            const auto root = solve_bracketed(extend_vs_abandon, bracket->first, bracket->second, tol);
            out.upper = CriticalValue::at(root.root);
            out.upper_residual = root.residual;
        }
    }

    std::optional<Gap> gap;
    if (const auto x_star = exercise_minimizer(OptionKind::put, k2, params)) {
        gap = convex_gap(extend_vs_exercise, k2, *x_star, tol);
    } else if (put_at_zero < k1 + fee) {
        gap = increasing_gap(extend_vs_exercise, k2, tol);
    }
    // At I2 <= K1 exercise is worth K1 - I2 >= 0 = P(I2) - A: I2 lies in the gap.
    if (out.upper.is_finite() && out.upper.level() <= k1) {
        if (!gap) gap = Gap{out.upper, out.upper};
        if (gap->hi.level() < out.upper.level()) gap->hi = out.upper;
    }
    remove_gap(out, gap);
    if (out.never_extended) {
        out.lower = CriticalValue::none();
        out.upper = CriticalValue::none();
        out.lower_residual = out.upper_residual = 0.0;
    }
    return out;
}

DecisionBoundaries solve_boundaries(const ContractSpec& spec, const PeriodParams& params) {
    return spec.kind == OptionKind::call ? solve_call_boundaries(spec, params)
                                         : solve_put_boundaries(spec, params);
}

}  // namespace extendo
