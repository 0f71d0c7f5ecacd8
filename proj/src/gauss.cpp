#include "extendo/gauss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "extendo/error.hpp"

namespace extendo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Beyond this magnitude every probability below saturates at 0 or 1 in double precision.
constexpr double kSaturation = 40.0;

void require_not_nan(double x, const char* what) {
    if (std::isnan(x)) {
        std::ostringstream msg;
        msg << what << ": NaN argument";
        throw InputError(InputErrorCode::domain, msg.str());
    }
}

// Gauss-Legendre half-rules (negative abscissas) with 6, 12 and 20 points.
struct HalfRule {
    int size;
    std::array<double, 10> x;
    std::array<double, 10> w;
};

constexpr HalfRule kRule6{3,
                          {-0.9324695142031522, -0.6612093864662647, -0.2386191860831970},
                          {0.1713244923791705, 0.3607615730481384, 0.4679139345726904}};
constexpr HalfRule kRule12{6,
                           {-0.9815606342467191, -0.9041172563704750, -0.7699026741943050,
                            -0.5873179542866171, -0.3678314989981802, -0.1252334085114692},
                           {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                            0.2031674267230659, 0.2334925365383547, 0.2491470458134029}};
constexpr HalfRule kRule20{10,
                           {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
                            -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
                            -0.5108670019508271, -0.3737060887154196, -0.2277858511416451,
                            -0.07652652113349733},
                           {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                            0.08327674157670475, 0.1019301198172404, 0.1181945319615184,
                            0.1316886384491766, 0.1420961093183821, 0.1491729864726037,
                            0.1527533871307259}};

double phi(double x) noexcept { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

// Upper orthant P(Z1 > h, Z2 > k), finite h and k, |r| < 1.
double upper_orthant(double h, double k, double r) noexcept {
    const double abs_r = std::abs(r);
    const HalfRule& rule = abs_r < 0.3 ? kRule6 : (abs_r < 0.75 ? kRule12 : kRule20);

    double hk = h * k;
    double bvn = 0.0;
    if (abs_r < 0.925) {
        const double hs = (h * h + k * k) / 2.0;
        const double asr = std::asin(r);
        for (int i = 0; i < rule.size; ++i) {
            double sn = std::sin(asr * (rule.x[i] + 1.0) / 2.0);
            bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
            sn = std::sin(asr * (-rule.x[i] + 1.0) / 2.0);
            bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
        }
        return bvn * asr / (2.0 * kTwoPi) + phi(-h) * phi(-k);
    }

    if (r < 0.0) {
        k = -k;
        hk = -hk;
    }
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-(bs / as + hk) / 2.0) *
          (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (hk > -160.0) {
        const double b = std::sqrt(bs);
        bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * phi(-b / a) * b *
               (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (int i = 0; i < rule.size; ++i) {
        for (double sign : {-1.0, 1.0}) {
            const double xs = std::pow(a * (sign * rule.x[i] + 1.0), 2);
            const double rs = std::sqrt(1.0 - xs);
            const double exponent = -(bs / xs + hk) / 2.0;
            if (exponent > -100.0) {
                bvn += a * rule.w[i] * std::exp(exponent) *
                       (std::exp(-hk * xs / (2.0 * (1.0 + rs) * (1.0 + rs))) / rs -
                        (1.0 + c * xs * (1.0 + d * xs)));
            }
        }
    }
    bvn = -bvn / kTwoPi;
    if (r > 0.0) return bvn + phi(-std::max(h, k));
    return -bvn + std::max(0.0, phi(-h) - phi(-k));
}

}  // namespace

Correlation::Correlation(double rho) : rho_(rho) {
    if (std::isnan(rho) || rho < -1.0 || rho > 1.0) {
        std::ostringstream msg;
        msg << "correlation " << rho << " is outside [-1, 1]";
        throw InputError(InputErrorCode::domain, msg.str());
    }
}

double norm_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
}

double norm_cdf(double x) {
    require_not_nan(x, "norm_cdf");
    return phi(x);
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream msg;
        msg << "norm_quantile: probability " << p << " is outside (0, 1)";
        throw InputError(InputErrorCode::domain, msg.str());
    }
    using namespace boost::math::policies;
    using fast = policy<promote_double<false>>;
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p, fast());
}

double bvn_cdf(double a, double b, Correlation rho) {
    require_not_nan(a, "bvn_cdf");
    require_not_nan(b, "bvn_cdf");
    if (a == -kInf || b == -kInf) return 0.0;
    if (a == kInf) return phi(b);
    if (b == kInf) return phi(a);

    const double r = rho.value();
    if (r == 1.0) return phi(std::min(a, b));
    if (r == -1.0) return std::max(0.0, phi(a) + phi(b) - 1.0);

    a = std::clamp(a, -kSaturation, kSaturation);
    b = std::clamp(b, -kSaturation, kSaturation);
    return std::clamp(upper_orthant(-a, -b, r), 0.0, 1.0);
}

double interval_prob(double a, double b) {
    require_not_nan(a, "interval_prob");
    require_not_nan(b, "interval_prob");
    if (a > b) {
        std::ostringstream msg;
        msg << "interval_prob: lower bound " << a << " exceeds upper bound " << b;
        throw InputError(InputErrorCode::domain, msg.str());
    }
    return std::max(0.0, phi(b) - phi(a));
}

double rect_prob(double a, double b, double c, double d, Correlation rho) {
    for (double v : {a, b, c, d}) require_not_nan(v, "rect_prob");
    if (a > b || c > d) {
        std::ostringstream msg;
        msg << "rect_prob: empty rectangle [" << a << ", " << b << "] x [" << c << ", " << d << "]";
        throw InputError(InputErrorCode::domain, msg.str());
    }
    const double mass = bvn_cdf(b, d, rho) - bvn_cdf(a, d, rho) - bvn_cdf(b, c, rho) + bvn_cdf(a, c, rho);
    return std::clamp(mass, 0.0, 1.0);
}

}  // namespace extendo
