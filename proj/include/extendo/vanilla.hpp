#pragma once

#include "extendo/termstructure.hpp"

namespace extendo {

enum class OptionKind { call, put };

struct VanillaQuote {
    double price;
    double d1;
    double d2;
};

/// European option at t = 0 expiring at T1 with strike K1, priced with the [0, T1]
/// averages. d1 equals the gamma4 constant of the extendible formulas.
VanillaQuote bs_t0(OptionKind kind, double spot, double strike, const PeriodParams& params);

/// European option valued at T1 for level x, expiring at T2, priced with the
/// forward-period averages r12, mu12, sigma12.
VanillaQuote bs_t1(OptionKind kind, double x, double strike, const PeriodParams& params);

/// d/dx of bs_t1.
double bs_t1_delta(OptionKind kind, double x, double strike, const PeriodParams& params);

/// C(x, T1; K2, T2) - x for the call, evaluated without the cancellation of the
/// naive difference at large x.
double bs_t1_call_less_spot(double x, double strike, const PeriodParams& params);

/// Standardized log level (ln(level / spot) - (mu - sigma^2/2) T) / (sigma sqrt(T)).
/// Level 0 maps to -inf and level +inf to +inf.
double standardized_log_level(double level, double spot, double mu, double sigma, double t);

}  // namespace extendo
