#include "extendo/termstructure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "extendo/error.hpp"

namespace extendo {

TermStructure::TermStructure(std::vector<Segment> segments) {
    if (segments.empty()) {
        throw InputError(InputErrorCode::invalid_curve, "curve has no segments");
    }
    double previous = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (!std::isfinite(s.end_time) || !std::isfinite(s.value)) {
            std::ostringstream msg;
            msg << "segment " << i << ": end_time and value must be finite";
            throw InputError(InputErrorCode::invalid_curve, msg.str());
        }
        if (!(s.end_time > previous)) {
            std::ostringstream msg;
            msg << "segment " << i << ": end_time " << s.end_time
                << " is not greater than the previous end_time " << previous;
            throw InputError(InputErrorCode::invalid_curve, msg.str());
        }
        previous = s.end_time;
        if (!segments_.empty() && segments_.back().value == s.value) {
            segments_.back().end_time = s.end_time;
        } else {
            segments_.push_back(s);
        }
    }
}

TermStructure TermStructure::flat(double value, double horizon) {
    return TermStructure({{horizon, value}});
}

void TermStructure::check_range(double lo, double hi) const {
    if (!(lo >= 0.0) || !(lo <= hi)) {
        std::ostringstream msg;
        msg << "integration range [" << lo << ", " << hi << "] is invalid";
        throw InputError(InputErrorCode::domain, msg.str());
    }
    if (hi > horizon()) {
        std::ostringstream msg;
        msg << "time " << hi << " is beyond the curve horizon " << horizon();
        throw InputError(InputErrorCode::curve_horizon, msg.str());
    }
}

template <class Transform>
double TermStructure::accumulate(double lo, double hi, Transform f) const {
    check_range(lo, hi);
    double sum = 0.0;
    double start = 0.0;
    for (const auto& s : segments_) {
        const double a = std::max(start, lo);
        const double b = std::min(s.end_time, hi);
        if (b > a) sum += f(s.value) * (b - a);
        if (s.end_time >= hi) break;
        start = s.end_time;
    }
    return sum;
}

double TermStructure::integrate(double lo, double hi) const {
    return accumulate(lo, hi, [](double v) { return v; });
}

double TermStructure::integrate_squared(double lo, double hi) const {
    return accumulate(lo, hi, [](double v) { return v * v; });
}

namespace {

// Index of the segment containing (lo, hi] entirely, or npos.
std::size_t single_segment(std::span<const Segment> segments, double lo, double hi) {
    double start = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (lo >= start && hi <= segments[i].end_time) return i;
        if (segments[i].end_time > lo) break;
        start = segments[i].end_time;
    }
    return static_cast<std::size_t>(-1);
}

}  // namespace

double TermStructure::average(double lo, double hi) const {
    check_range(lo, hi);
    if (!(hi > lo)) throw InputError(InputErrorCode::domain, "average over an empty interval");
    if (auto i = single_segment(segments_, lo, hi); i != static_cast<std::size_t>(-1)) {
        return segments_[i].value;
    }
    return integrate(lo, hi) / (hi - lo);
}

double TermStructure::average_squared(double lo, double hi) const {
    check_range(lo, hi);
    if (!(hi > lo)) throw InputError(InputErrorCode::domain, "average over an empty interval");
    if (auto i = single_segment(segments_, lo, hi); i != static_cast<std::size_t>(-1)) {
        return segments_[i].value * segments_[i].value;
    }
    return integrate_squared(lo, hi) / (hi - lo);
}

bool TermStructure::is_constant_until(double t) const {
    return segments_.front().end_time >= t;
}

double TermStructure::min_value() const noexcept {
    return std::min_element(segments_.begin(), segments_.end(),
                            [](const Segment& a, const Segment& b) { return a.value < b.value; })
        ->value;
}

void MarketData::validate() const {
    if (!(spot > 0.0) || !std::isfinite(spot)) {
        throw InputError(InputErrorCode::domain, "spot must be positive and finite");
    }
    if (!(vol.min_value() > 0.0)) {
        throw InputError(InputErrorCode::invalid_curve, "volatility segments must be strictly positive");
    }
}

MarketData MarketData::constant(double spot, double r, double q, double sigma, double horizon) {
    return MarketData{spot, TermStructure::flat(r, horizon), TermStructure::flat(q, horizon),
                      TermStructure::flat(sigma, horizon)};
}

double PeriodParams::sd1() const noexcept { return sigma1 * std::sqrt(t1); }
double PeriodParams::sd2() const noexcept { return sigma2 * std::sqrt(t2); }
double PeriodParams::sd12() const noexcept { return sigma12 * std::sqrt(t2 - t1); }

PeriodParams period_params(const MarketData& market, double t1, double t2) {
    if (!std::isfinite(t1) || !std::isfinite(t2) || !(t1 > 0.0) || !(t1 < t2)) {
        std::ostringstream msg;
        msg << "decision dates must satisfy 0 < T1 < T2 (got T1=" << t1 << ", T2=" << t2 << ")";
        throw InputError(InputErrorCode::invalid_contract, msg.str());
    }
    market.validate();

    PeriodParams p{};
    p.t1 = t1;
    p.t2 = t2;
    p.r1 = market.rate.average(0.0, t1);
    p.r2 = market.rate.average(0.0, t2);
    p.mu1 = p.r1 - market.carry.average(0.0, t1);
    p.mu2 = p.r2 - market.carry.average(0.0, t2);
    p.sigma1 = std::sqrt(market.vol.average_squared(0.0, t1));
    p.sigma2 = std::sqrt(market.vol.average_squared(0.0, t2));
    p.rho = p.sd1() / p.sd2();
    p.r12 = market.rate.average(t1, t2);
    p.mu12 = p.r12 - market.carry.average(t1, t2);
    p.sigma12 = std::sqrt(market.vol.average_squared(t1, t2));
    return p;
}

}  // namespace extendo
