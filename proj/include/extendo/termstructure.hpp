#pragma once

#include <span>
#include <vector>

namespace extendo {

/// One step of a piecewise-constant curve. The step covers (previous end_time, end_time].
struct Segment {
    double end_time;
    double value;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Piecewise-constant function of time starting at t = 0, used for r(t), q(t) and sigma(t).
///
/// Adjacent segments carrying the same value are merged on construction, so a curve
/// that only differs by a redundant split is stored identically and every quantity
/// derived from it is bit-identical.
class TermStructure {
public:
    /// Throws InputError(invalid_curve) unless end times are finite, positive and
    /// strictly increasing and all values are finite.
    explicit TermStructure(std::vector<Segment> segments);

    static TermStructure flat(double value, double horizon);

    /// Exact integral over [lo, hi]. Throws InputError(curve_horizon) beyond horizon().
    double integrate(double lo, double hi) const;
    /// Exact integral of the squared curve over [lo, hi].
    double integrate_squared(double lo, double hi) const;

    /// Average value over [lo, hi], lo < hi. Returns the segment value itself
    /// (no rounding) when the interval lies inside one segment.
    double average(double lo, double hi) const;
    double average_squared(double lo, double hi) const;

    double horizon() const noexcept { return segments_.back().end_time; }
    std::span<const Segment> segments() const noexcept { return segments_; }

    /// True when the curve takes a single value on [0, t].
    bool is_constant_until(double t) const;
    double min_value() const noexcept;

    friend bool operator==(const TermStructure&, const TermStructure&) = default;

private:
    template <class Transform>
    double accumulate(double lo, double hi, Transform f) const;
    void check_range(double lo, double hi) const;

    std::vector<Segment> segments_;
};

/// Spot plus the three curves of the risk-neutral GBM dX = X (r - q) dt + X sigma dW.
struct MarketData {
    double spot;
    TermStructure rate;
    TermStructure carry;
    TermStructure vol;

    /// Throws InputError(domain) for spot <= 0 and InputError(invalid_curve) for a
    /// non-positive volatility segment.
    void validate() const;

    /// Flat curves on [0, horizon].
    static MarketData constant(double spot, double r, double q, double sigma, double horizon);
};

/// Time averages of the market curves over [0, T1], [0, T2] and the forward period [T1, T2].
struct PeriodParams {
    double t1;
    double t2;
    double mu1, mu2;        // average of r - q
    double r1, r2;          // average of r
    double sigma1, sigma2;  // root of the average of sigma^2
    double rho;             // sigma1 sqrt(T1) / (sigma2 sqrt(T2))
    double r12, mu12, sigma12;

    double tau() const noexcept { return t2 - t1; }
    double sd1() const noexcept;   // sigma1 sqrt(T1)
    double sd2() const noexcept;   // sigma2 sqrt(T2)
    double sd12() const noexcept;  // sigma12 sqrt(T2 - T1)

    friend bool operator==(const PeriodParams&, const PeriodParams&) = default;
};

/// Throws InputError(invalid_contract) unless 0 < t1 < t2, InputError(curve_horizon)
/// when t2 is beyond any curve, and validates the market.
PeriodParams period_params(const MarketData& market, double t1, double t2);

}  // namespace extendo
