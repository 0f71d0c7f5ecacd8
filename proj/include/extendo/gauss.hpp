#pragma once

namespace extendo {

/// Correlation coefficient in [-1, 1]. Construction rejects NaN and out-of-range values.
class Correlation {
public:
    explicit Correlation(double rho);
    double value() const noexcept { return rho_; }
    Correlation operator-() const noexcept { return Correlation(-rho_, unchecked{}); }

private:
    struct unchecked {};
    Correlation(double rho, unchecked) noexcept : rho_(rho) {}
    double rho_;
};

double norm_pdf(double x) noexcept;

/// P(Z <= x) for standard normal Z. Accepts +-infinity; throws InputError(domain) on NaN.
double norm_cdf(double x);

/// Inverse of norm_cdf on the open interval (0, 1).
double norm_quantile(double p);

/// P(Z1 <= a, Z2 <= b) for standard bivariate normal with correlation rho.
///
/// Drezner-Wesolowsky style Gauss-Legendre integration over the arcsine of the
/// correlation for |rho| < 0.925, and the expansion around |rho| = 1 otherwise.
/// Absolute error is a few 1e-16. Arguments may be infinite.
double bvn_cdf(double a, double b, Correlation rho);

/// P(a <= Z <= b). Requires a <= b.
double interval_prob(double a, double b);

/// Mass of the standard bivariate normal over [a, b] x [c, d], clamped to [0, 1].
double rect_prob(double a, double b, double c, double d, Correlation rho);

}  // namespace extendo
