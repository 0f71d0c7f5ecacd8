#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "extendo/boundary.hpp"
#include "extendo/contract.hpp"
#include "extendo/termstructure.hpp"

namespace extendo {

/// Standardized log levels of I1, I2 (a, b) and K2, K1 (c, d), and the gamma constants
/// gamma1 = s1 - b, gamma2 = s1 - a, gamma3 = s2 - c, gamma4 = s1 - d with
/// s_i = sigma_i sqrt(T_i). A zero I1 gives a = -inf, an infinite I2 gives b = +inf.
struct AbcdGamma {
    double a, b, c, d;
    double gamma1, gamma2, gamma3, gamma4;
};

/// Throws InputError(domain) when a boundary has kind none (no extension region).
AbcdGamma abcd_gamma(const ContractSpec& spec, const PeriodParams& params, double spot,
                     const DecisionBoundaries& boundaries);

/// Algebraic layout of the closed form. Both evaluate the same expectation; the
/// rectangle form goes through rect_prob/interval_prob, the difference form through
/// differences of bvn_cdf/norm_cdf values.
enum class FormulaForm { rectangle, difference };

struct PriceReport {
    OptionKind kind;
    FormulaForm form;
    double price;
    /// European option on (K1, T1).
    double vanilla_component;
    /// The five lines of the closed form in order; terms[0] includes the vanilla
    /// component. price is their sum. For a never-extended contract terms[0] is the
    /// vanilla price and the rest are zero.
    std::array<double, 5> terms;
    DecisionBoundaries boundaries;
    PeriodParams params;
    std::optional<AbcdGamma> constants;
    /// Risk-neutral P(I1 < X_T1 < I2).
    double extension_probability;
};

PriceReport price_call(const ContractSpec& spec, const MarketData& market,
                       FormulaForm form = FormulaForm::rectangle);
PriceReport price_put(const ContractSpec& spec, const MarketData& market,
                      FormulaForm form = FormulaForm::rectangle);
PriceReport price(const ContractSpec& spec, const MarketData& market,
                  FormulaForm form = FormulaForm::rectangle);

struct PricingJob {
    ContractSpec spec;
    MarketData market;
};

/// Prices independent jobs on up to `threads` workers (0 picks the hardware count).
/// Results are in job order. The first exception thrown by any job is rethrown.
std::vector<PriceReport> price_batch(std::span<const PricingJob> jobs, unsigned threads = 0,
                                     FormulaForm form = FormulaForm::rectangle);

/// Reconstructions of the misprinted published holder-extendible put formulas.
/// They exist only to show that the misprints are wrong; nothing here returns a price
/// through the regular pricing path.
namespace errata {

/// Tag that must be passed explicitly to reach the erroneous variants.
struct ReproduceErrata {
    explicit constexpr ReproduceErrata() = default;
};
inline constexpr ReproduceErrata reproduce_errata{};

/// The two bivariate extension terms of the put, written with the first rectangle
/// bounds (gamma1, gamma2):
///   -X0 e^{(mu2-r2)T2} N(gamma1, gamma2, -inf, spot_upper, rho)
///   + D K2 N(gamma1 - s1, gamma2 - s1, -inf, strike_upper, rho)
/// where D = e^{-r12 (T2-T1)} when forward_discount is set and e^{-r2 T2} otherwise.
/// The correct values are spot_upper = -gamma3, strike_upper = s2 - gamma3,
/// rho = -rho and the e^{-r2 T2} discount.
struct PutExtensionArgs {
    double spot_upper;
    double strike_upper;
    double rho;
    bool forward_discount;
};

using Substitution = PutExtensionArgs (*)(PutExtensionArgs);

/// Sign flips of both upper bounds and of rho, and the T2 - T1 discount. An involution.
PutExtensionArgs longstaff1990_substitution(PutExtensionArgs args);
/// Sign flip of rho only. An involution.
PutExtensionArgs haug1998_substitution(PutExtensionArgs args);

/// Put price with the listed substitutions applied in order to the correct extension
/// terms. Requires curves that are constant on [0, T2] (InputError(unsupported_setting)
/// otherwise). With no substitutions this is the correct price.
double price_put_variant(const ContractSpec& spec, const MarketData& market,
                         std::span<const Substitution> substitutions, ReproduceErrata);

double price_put_longstaff1990(const ContractSpec& spec, const MarketData& market, ReproduceErrata);
double price_put_haug1998(const ContractSpec& spec, const MarketData& market, ReproduceErrata);

}  // namespace errata
}  // namespace extendo
