#include "extendo/vanilla.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "extendo/error.hpp"
#include "extendo/gauss.hpp"

namespace extendo {
namespace {

// |d1| beyond this gives N(d1) equal to 0 or 1 exactly in double precision.
constexpr double kDeep = 40.0;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << what << " must be positive and finite (got " << v << ")";
        throw InputError(InputErrorCode::domain, msg.str());
    }
}

// Black formula on a forward: growth = e^{(mu - r) tau}, discount = e^{-r tau}.
VanillaQuote black(OptionKind kind, double x, double strike, double mu, double r, double sd, double tau) {
    const double d1 = (std::log(x / strike) + mu * tau) / sd + 0.5 * sd;
    const double d2 = d1 - sd;
    const double growth = std::exp((mu - r) * tau);
    const double discount = std::exp(-r * tau);

    double price;
    if (d1 > kDeep) {
        price = kind == OptionKind::call ? x * growth - strike * discount : 0.0;
    } else if (d1 < -kDeep) {
        price = kind == OptionKind::call ? 0.0 : strike * discount - x * growth;
    } else if (kind == OptionKind::call) {
        price = x * growth * norm_cdf(d1) - strike * discount * norm_cdf(d2);
    } else {
        price = strike * discount * norm_cdf(-d2) - x * growth * norm_cdf(-d1);
    }
    return {std::max(price, 0.0), d1, d2};
}

}  // namespace

VanillaQuote bs_t0(OptionKind kind, double spot, double strike, const PeriodParams& params) {
    require_positive(spot, "spot");
    require_positive(strike, "strike");
    return black(kind, spot, strike, params.mu1, params.r1, params.sd1(), params.t1);
}

VanillaQuote bs_t1(OptionKind kind, double x, double strike, const PeriodParams& params) {
    require_positive(x, "asset level");
    require_positive(strike, "strike");
    return black(kind, x, strike, params.mu12, params.r12, params.sd12(), params.tau());
}

double bs_t1_delta(OptionKind kind, double x, double strike, const PeriodParams& params) {
    require_positive(x, "asset level");
    require_positive(strike, "strike");
    const double tau = params.tau();
    const double sd = params.sd12();
    const double d1 = (std::log(x / strike) + params.mu12 * tau) / sd + 0.5 * sd;
    const double growth = std::exp((params.mu12 - params.r12) * tau);
    return kind == OptionKind::call ? growth * norm_cdf(d1) : -growth * norm_cdf(-d1);
}

double bs_t1_call_less_spot(double x, double strike, const PeriodParams& params) {
    require_positive(x, "asset level");
    require_positive(strike, "strike");
    const double tau = params.tau();
    const double sd = params.sd12();
    const double d1 = (std::log(x / strike) + params.mu12 * tau) / sd + 0.5 * sd;
    const double d2 = d1 - sd;
    const double log_growth = (params.mu12 - params.r12) * tau;
    const double discount = std::exp(-params.r12 * tau);
    // C - x = -x (1 - g N(d1)) - K D N(d2), with 1 - g N(d1) = -expm1(ln g) + g N(-d1).
    const double spot_shortfall = -std::expm1(log_growth) + std::exp(log_growth) * norm_cdf(-d1);
    return -x * spot_shortfall - strike * discount * norm_cdf(d2);
}

double standardized_log_level(double level, double spot, double mu, double sigma, double t) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (level == 0.0) return -inf;
    if (level == inf) return inf;
    const double sd = sigma * std::sqrt(t);
    return (std::log(level / spot) - mu * t + 0.5 * sd * sd) / sd;
}

}  // namespace extendo
