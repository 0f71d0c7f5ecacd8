#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "extendo/contract.hpp"
#include "extendo/termstructure.hpp"

namespace extendo {

/// A critical asset level at T1. Degenerate levels are explicit kinds rather than
/// magic numbers; level() maps them onto the extended real line.
class CriticalValue {
public:
    enum class Kind {
        finite,
        zero,      // the equation has no root above 0: the region starts at 0
        infinite,  // no root below +inf: the region is unbounded above
        none,      // no extension region exists on this side
    };

    static CriticalValue at(double level) { return CriticalValue(Kind::finite, level); }
    static CriticalValue zero() { return CriticalValue(Kind::zero, 0.0); }
    static CriticalValue infinite() {
        return CriticalValue(Kind::infinite, std::numeric_limits<double>::infinity());
    }
    static CriticalValue none() { return CriticalValue(Kind::none, std::numeric_limits<double>::quiet_NaN()); }

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::finite; }
    double level() const noexcept { return level_; }

    friend bool operator==(const CriticalValue& a, const CriticalValue& b) {
        return a.kind_ == b.kind_ && (a.kind_ == Kind::none || a.level_ == b.level_);
    }

private:
    CriticalValue(Kind kind, double level) : kind_(kind), level_(level) {}
    Kind kind_;
    double level_;
};

/// Interval (J1, J2) strictly inside (I1, I2) where exercising beats extending.
///
/// Extension against exercise is decided by V(x) - A against the intrinsic value,
/// and that difference is convex in x. With a non-negative forward carry it is
/// monotone and the extension region is the single interval (I1, I2). With a
/// negative carry it can dip below zero between two roots, which cuts the region
/// in two.
struct ExercisePocket {
    double lower;
    double upper;
    double lower_residual;
    double upper_residual;

    friend bool operator==(const ExercisePocket&, const ExercisePocket&) = default;
};

/// Critical values I1 < I2 bounding the extension region at T1.
struct DecisionBoundaries {
    CriticalValue lower = CriticalValue::none();
    CriticalValue upper = CriticalValue::none();
    bool never_extended = false;
    /// |f(I)| of the defining equation at the returned root, 0 for degenerate kinds.
    double lower_residual = 0.0;
    double upper_residual = 0.0;
    std::optional<ExercisePocket> pocket;

    friend bool operator==(const DecisionBoundaries&, const DecisionBoundaries&) = default;
};

/// The extension region as disjoint open intervals of asset levels, in increasing
/// order: none when never extended, two when there is a pocket, one otherwise.
std::vector<std::pair<double, double>> extension_intervals(const DecisionBoundaries& boundaries);

/// Stopping rule for the critical-value search.
struct SolverTolerance {
    static constexpr double residual_scale = 1e-10;  // |f| <= residual_scale * max(1, K2)
    static constexpr double relative_width = 1e-12;  // bracket width <= relative_width * midpoint
    static constexpr int max_iterations = 200;
    static constexpr int max_doublings = 60;         // bracket search spans K2 * 2^[-60, 60]
};

struct RootResult {
    double root;
    double residual;  // |f(root)|
    int iterations;
};

/// Value and derivative of a scalar function.
using ValueAndSlope = std::function<std::pair<double, double>(double)>;

/// Safeguarded Newton on [lo, hi], where f(lo) and f(hi) have opposite signs (or one
/// is zero). Newton steps that leave the bracket or stall fall back to bisection.
/// Stops when |f| <= residual_tol and the bracket is narrower than
/// SolverTolerance::relative_width times its midpoint. Throws NumericError after
/// SolverTolerance::max_iterations.
RootResult solve_bracketed(const ValueAndSlope& f, double lo, double hi, double residual_tol);

/// I1 from C(I1) = A and I2 from C(I2) = I2 - K1 + A.
DecisionBoundaries solve_call_boundaries(const ContractSpec& spec, const PeriodParams& params);

/// I1 from P(I1) = K1 - I1 + A and I2 from P(I2) = A.
DecisionBoundaries solve_put_boundaries(const ContractSpec& spec, const PeriodParams& params);

DecisionBoundaries solve_boundaries(const ContractSpec& spec, const PeriodParams& params);

}  // namespace extendo
