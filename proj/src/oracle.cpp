#include "extendo/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "extendo/error.hpp"
#include "extendo/gauss.hpp"
#include "extendo/philox.hpp"
#include "extendo/vanilla.hpp"

namespace extendo {
namespace {

// Samples per block. Blocks are the unit of parallel work and are merged in index
// order, so the estimate does not depend on the worker count.
constexpr std::uint64_t kBlockSize = 1u << 15;

struct Moments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        const double n = static_cast<double>(count);
        const double m = static_cast<double>(other.count);
        const double delta = other.mean - mean;
        count += other.count;
        mean += delta * m / (n + m);
        m2 += other.m2 + delta * delta * n * m / (n + m);
    }
};

// Estimator value for sample `index`: the antithetic pair average or a single draw.
template <class Payoff>
McEstimate run(const McConfig& cfg, Payoff payoff) {
    cfg.validate();
    const std::uint64_t samples = cfg.antithetic ? cfg.paths / 2 : cfg.paths;
    const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
    std::vector<Moments> partial(blocks);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            Moments m;
            const std::uint64_t end = std::min(samples, (b + 1) * kBlockSize);
            for (std::uint64_t i = b * kBlockSize; i < end; ++i) {
                const auto u = uniform_pair(cfg.seed, i);
                const double z1 = norm_quantile(u[0]);
                const double z2 = norm_quantile(u[1]);
                m.add(cfg.antithetic ? 0.5 * (payoff(z1, z2) + payoff(-z1, -z2)) : payoff(z1, z2));
            }
            partial[b] = m;
        }
    };

    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(blocks, 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    Moments total;
    for (const auto& m : partial) total.merge(m);
    const double n = static_cast<double>(total.count);
    const double variance = total.count > 1 ? total.m2 / (n - 1.0) : 0.0;
    return {total.mean, std::sqrt(variance / n), cfg.paths};
}

// Black value at T1 of the T2 option. Kept separate from the vanilla module so the
// two-stage estimator shares no pricing code with the closed forms.
double continuation_value(OptionKind kind, double x, double strike, const PeriodParams& p) {
    const double tau = p.t2 - p.t1;
    const double sd = p.sigma12 * std::sqrt(tau);
    const double forward = x * std::exp(p.mu12 * tau);
    const double d1 = std::log(forward / strike) / sd + 0.5 * sd;
    const double d2 = d1 - sd;
    const double df = std::exp(-p.r12 * tau);
    const auto cdf = [](double v) { return 0.5 * std::erfc(-v / std::sqrt(2.0)); };
    if (kind == OptionKind::call) return df * (forward * cdf(d1) - strike * cdf(d2));
    return df * (strike * cdf(-d2) - forward * cdf(-d1));
}

double intrinsic(OptionKind kind, double x, double strike) {
    return std::max(kind == OptionKind::call ? x - strike : strike - x, 0.0);
}

}  // namespace

void McConfig::validate() const {
    if (paths < 2) throw InputError(InputErrorCode::domain, "Monte Carlo needs at least 2 paths");
    if (antithetic && paths % 2 != 0) {
        std::ostringstream msg;
        msg << "antithetic sampling needs an even path count (got " << paths << ")";
        throw InputError(InputErrorCode::domain, msg.str());
    }
}

TerminalPair sample_terminal_pair(const PeriodParams& p, double z1, double z2, double spot) noexcept {
    const double s1 = p.sd1();
    const double s2 = p.sd2();
    const double log1 = (p.mu1 * p.t1 - 0.5 * s1 * s1) + s1 * z1;
    const double log2 = (p.mu2 * p.t2 - 0.5 * s2 * s2) + s2 * (p.rho * z1 + std::sqrt(1.0 - p.rho * p.rho) * z2);
    return {spot * std::exp(log1), spot * std::exp(log2)};
}

McEstimate mc_price(const ContractSpec& spec, const MarketData& market, const McConfig& cfg) {
    spec.validate();
    const PeriodParams p = period_params(market, spec.t1, spec.t2);
    const double discount1 = std::exp(-p.r1 * p.t1);
    const double drift = p.mu1 * p.t1 - 0.5 * p.sd1() * p.sd1();
    const double s1 = p.sd1();
    const double spot = market.spot;

    return run(cfg, [&](double z1, double) {
        const double x = spot * std::exp(drift + s1 * z1);
        const double extend = bs_t1(spec.kind, x, spec.strike2, p).price - spec.fee;
        return discount1 * std::max(intrinsic(spec.kind, x, spec.strike1), extend);
    });
}

McEstimate mc_price_two_stage(const ContractSpec& spec, const MarketData& market, const McConfig& cfg) {
    spec.validate();
    const PeriodParams p = period_params(market, spec.t1, spec.t2);
    const double discount1 = std::exp(-p.r1 * p.t1);
    const double discount2 = std::exp(-p.r2 * p.t2);
    const double spot = market.spot;

    return run(cfg, [&](double z1, double z2) {
        const auto [x1, x2] = sample_terminal_pair(p, z1, z2, spot);
        const double exercise = intrinsic(spec.kind, x1, spec.strike1);
        const double extend = continuation_value(spec.kind, x1, spec.strike2, p) - spec.fee;
        if (extend > exercise) {
            return discount2 * intrinsic(spec.kind, x2, spec.strike2) - discount1 * spec.fee;
        }
        return discount1 * exercise;
    });
}

}  // namespace extendo
