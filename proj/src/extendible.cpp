#include "extendo/extendible.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "extendo/error.hpp"
#include "extendo/gauss.hpp"

namespace extendo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double boundary_level(const CriticalValue& v) {
    if (v.kind() == CriticalValue::Kind::none) {
        throw InputError(InputErrorCode::domain, "critical value has no extension region");
    }
    return v.level();
}

struct Factors {
    double spot;
    double growth1;   // e^{(mu1 - r1) T1}
    double growth2;   // e^{(mu2 - r2) T2}
    double discount1; // e^{-r1 T1}
    double discount2; // e^{-r2 T2}
    double s1;
    double s2;
};

Factors factors(const PeriodParams& p, double spot) {
    return {spot,
            std::exp((p.mu1 - p.r1) * p.t1),
            std::exp((p.mu2 - p.r2) * p.t2),
            std::exp(-p.r1 * p.t1),
            std::exp(-p.r2 * p.t2),
            p.sd1(),
            p.sd2()};
}

// interval_prob over [lo, hi]; a reversed interval only arises when the extension
// region is empty to within solver tolerance and carries no mass.
double interval_or_empty(double lo, double hi) {
    return lo >= hi ? 0.0 : interval_prob(lo, hi);
}

using Terms = std::array<double, 5>;

Terms call_terms_rectangle(const ContractSpec& s, const Factors& f, const AbcdGamma& g, Correlation rho) {
    const double s1 = f.s1;
    const double s2 = f.s2;
    return {
        f.spot * f.growth2 * rect_prob(g.gamma1, g.gamma2, -kInf, g.gamma3, rho),
        -f.discount2 * s.strike2 * rect_prob(g.gamma1 - s1, g.gamma2 - s1, -kInf, g.gamma3 - s2, rho),
        -f.discount1 * s.fee * interval_or_empty(g.gamma1 - s1, g.gamma2 - s1),
        -f.spot * f.growth1 * interval_or_empty(g.gamma1, g.gamma4),
        f.discount1 * s.strike1 * interval_or_empty(g.gamma1 - s1, g.gamma4 - s1),
    };
}

Terms call_terms_difference(const ContractSpec& s, const Factors& f, const AbcdGamma& g, Correlation rho) {
    const double s1 = f.s1;
    const double s2 = f.s2;
    return {
        f.spot * f.growth2 * (bvn_cdf(g.gamma2, g.gamma3, rho) - bvn_cdf(g.gamma1, g.gamma3, rho)),
        -f.discount2 * s.strike2 *
            (bvn_cdf(g.gamma2 - s1, g.gamma3 - s2, rho) - bvn_cdf(g.gamma1 - s1, g.gamma3 - s2, rho)),
        -f.discount1 * s.fee * (norm_cdf(g.gamma2 - s1) - norm_cdf(g.gamma1 - s1)),
        -f.spot * f.growth1 * (norm_cdf(g.gamma4) - norm_cdf(g.gamma1)),
        f.discount1 * s.strike1 * (norm_cdf(g.gamma4 - s1) - norm_cdf(g.gamma1 - s1)),
    };
}

Terms put_terms_rectangle(const ContractSpec& s, const Factors& f, const AbcdGamma& g, Correlation rho) {
    const double s1 = f.s1;
    const double s2 = f.s2;
    return {
        -f.spot * f.growth2 * rect_prob(-g.gamma2, -g.gamma1, -kInf, -g.gamma3, rho),
        f.discount2 * s.strike2 * rect_prob(s1 - g.gamma2, s1 - g.gamma1, -kInf, s2 - g.gamma3, rho),
        -f.discount1 * s.fee * interval_or_empty(g.gamma1 - s1, g.gamma2 - s1),
        f.spot * f.growth1 * interval_or_empty(g.gamma4, g.gamma2),
        -f.discount1 * s.strike1 * interval_or_empty(g.gamma4 - s1, g.gamma2 - s1),
    };
}

Terms put_terms_difference(const ContractSpec& s, const Factors& f, const AbcdGamma& g, Correlation rho) {
    const double s1 = f.s1;
    const double s2 = f.s2;
    return {
        -f.spot * f.growth2 * (bvn_cdf(-g.gamma1, -g.gamma3, rho) - bvn_cdf(-g.gamma2, -g.gamma3, rho)),
        f.discount2 * s.strike2 *
            (bvn_cdf(s1 - g.gamma1, s2 - g.gamma3, rho) - bvn_cdf(s1 - g.gamma2, s2 - g.gamma3, rho)),
        -f.discount1 * s.fee * (norm_cdf(g.gamma2 - s1) - norm_cdf(g.gamma1 - s1)),
        f.spot * f.growth1 * (norm_cdf(g.gamma2) - norm_cdf(g.gamma4)),
        -f.discount1 * s.strike1 * (norm_cdf(g.gamma2 - s1) - norm_cdf(g.gamma4 - s1)),
    };
}

AbcdGamma constants_for(const ContractSpec& spec, const PeriodParams& p, double spot, double lo, double hi) {
    AbcdGamma g{};
    g.a = standardized_log_level(lo, spot, p.mu1, p.sigma1, p.t1);
    g.b = standardized_log_level(hi, spot, p.mu1, p.sigma1, p.t1);
    g.c = standardized_log_level(spec.strike2, spot, p.mu2, p.sigma2, p.t2);
    g.d = standardized_log_level(spec.strike1, spot, p.mu1, p.sigma1, p.t1);
    const double s1 = p.sd1();
    g.gamma1 = s1 - g.b;
    g.gamma2 = s1 - g.a;
    g.gamma3 = p.sd2() - g.c;
    g.gamma4 = s1 - g.d;
    return g;
}

// Constants for one piece of the extension region. The last two lines remove the
// vanilla payoff where the holder extends instead: x > K1 for the call, x < K1 for the
// put. Clamping d to the piece keeps that removal inside it; on a single interval the
// clamp never binds.
AbcdGamma piece_constants(const ContractSpec& spec, const PeriodParams& p, double spot, double lo, double hi) {
    AbcdGamma g = constants_for(spec, p, spot, lo, hi);
    g.d = spec.kind == OptionKind::call ? std::max(g.a, g.d) : std::min(g.b, g.d);
    g.gamma4 = p.sd1() - g.d;
    return g;
}

PriceReport price_impl(const ContractSpec& spec, const MarketData& market, FormulaForm form) {
    spec.validate();
    const PeriodParams params = period_params(market, spec.t1, spec.t2);
    const double spot = market.spot;

    PriceReport report{};
    report.kind = spec.kind;
    report.form = form;
    report.params = params;
    report.boundaries = solve_boundaries(spec, params);
    report.vanilla_component = bs_t0(spec.kind, spot, spec.strike1, params).price;
    report.terms = {report.vanilla_component, 0.0, 0.0, 0.0, 0.0};

    if (!report.boundaries.never_extended) {
        const Factors f = factors(params, spot);
        const Correlation rho(params.rho);
        Terms lines{};
        double probability = 0.0;
        for (const auto& [lo, hi] : extension_intervals(report.boundaries)) {
            const AbcdGamma g = piece_constants(spec, params, spot, lo, hi);
            Terms piece;
            if (spec.kind == OptionKind::call) {
                piece = form == FormulaForm::rectangle ? call_terms_rectangle(spec, f, g, rho)
                                                       : call_terms_difference(spec, f, g, rho);
            } else {
                piece = form == FormulaForm::rectangle ? put_terms_rectangle(spec, f, g, rho)
                                                       : put_terms_difference(spec, f, g, rho);
            }
            for (std::size_t i = 0; i < lines.size(); ++i) lines[i] += piece[i];
            probability += interval_or_empty(g.a, g.b);
        }
        lines[0] += report.vanilla_component;
        report.terms = lines;
        report.constants = abcd_gamma(spec, params, spot, report.boundaries);
        report.extension_probability = probability;
    }

    report.price = 0.0;
    for (double t : report.terms) report.price += t;
    return report;
}

}  // namespace

AbcdGamma abcd_gamma(const ContractSpec& spec, const PeriodParams& p, double spot,
                     const DecisionBoundaries& boundaries) {
    return constants_for(spec, p, spot, boundary_level(boundaries.lower), boundary_level(boundaries.upper));
}

PriceReport price_call(const ContractSpec& spec, const MarketData& market, FormulaForm form) {
    if (spec.kind != OptionKind::call) {
        throw InputError(InputErrorCode::invalid_contract, "price_call needs a call contract");
    }
    return price_impl(spec, market, form);
}

PriceReport price_put(const ContractSpec& spec, const MarketData& market, FormulaForm form) {
    if (spec.kind != OptionKind::put) {
        throw InputError(InputErrorCode::invalid_contract, "price_put needs a put contract");
    }
    return price_impl(spec, market, form);
}

PriceReport price(const ContractSpec& spec, const MarketData& market, FormulaForm form) {
    return price_impl(spec, market, form);
}

std::vector<PriceReport> price_batch(std::span<const PricingJob> jobs, unsigned threads, FormulaForm form) {
    std::vector<PriceReport> out(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                out[i] = price(jobs[i].spec, jobs[i].market, form);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

namespace errata {

PutExtensionArgs longstaff1990_substitution(PutExtensionArgs args) {
    return {-args.spot_upper, -args.strike_upper, -args.rho, !args.forward_discount};
}

PutExtensionArgs haug1998_substitution(PutExtensionArgs args) {
    return {args.spot_upper, args.strike_upper, -args.rho, args.forward_discount};
}

double price_put_variant(const ContractSpec& spec, const MarketData& market,
                         std::span<const Substitution> substitutions, ReproduceErrata) {
    if (spec.kind != OptionKind::put) {
        throw InputError(InputErrorCode::invalid_contract, "the erratum reconstructions apply to puts");
    }
    spec.validate();
    if (!market.rate.is_constant_until(spec.t2) || !market.carry.is_constant_until(spec.t2) ||
        !market.vol.is_constant_until(spec.t2)) {
        throw InputError(InputErrorCode::unsupported_setting,
                         "the published put formulas assume constant rate, carry and volatility");
    }
    const PeriodParams params = period_params(market, spec.t1, spec.t2);
    const DecisionBoundaries boundaries = solve_put_boundaries(spec, params);
    const double vanilla = bs_t0(OptionKind::put, market.spot, spec.strike1, params).price;
    if (boundaries.never_extended) return vanilla;

    const Factors f = factors(params, market.spot);
    const double s1 = f.s1;
    double total = vanilla;
    for (const auto& [lo, hi] : extension_intervals(boundaries)) {
        const AbcdGamma g = piece_constants(spec, params, market.spot, lo, hi);
        PutExtensionArgs args{-g.gamma3, f.s2 - g.gamma3, -params.rho, false};
        for (Substitution sub : substitutions) args = sub(args);

        const Correlation rho(args.rho);
        const double k2_discount = args.forward_discount ? std::exp(-params.r12 * params.tau()) : f.discount2;
        const double spot_term = -f.spot * f.growth2 * rect_prob(g.gamma1, g.gamma2, -kInf, args.spot_upper, rho);
        const double strike_term =
            k2_discount * spec.strike2 * rect_prob(g.gamma1 - s1, g.gamma2 - s1, -kInf, args.strike_upper, rho);
        const Terms shared = put_terms_rectangle(spec, f, g, Correlation(params.rho));
        total += spot_term + strike_term + shared[2] + shared[3] + shared[4];
    }
    return total;
}

double price_put_longstaff1990(const ContractSpec& spec, const MarketData& market, ReproduceErrata tag) {
    const Substitution subs[] = {&longstaff1990_substitution};
    return price_put_variant(spec, market, subs, tag);
}

double price_put_haug1998(const ContractSpec& spec, const MarketData& market, ReproduceErrata tag) {
    const Substitution subs[] = {&haug1998_substitution};
    return price_put_variant(spec, market, subs, tag);
}

}  // namespace errata
}  // namespace extendo
