#pragma once

#include <cstdint>

#include "extendo/contract.hpp"
#include "extendo/termstructure.hpp"

namespace extendo {

struct McConfig {
    std::uint64_t paths = 1'000'000;
    std::uint64_t seed = 20100928;
    bool antithetic = true;
    /// Worker threads; 0 uses the hardware count. Never changes the result.
    unsigned threads = 0;

    /// Throws InputError(domain) unless paths >= 2 and, with antithetic pairs, even.
    void validate() const;
};

struct McEstimate {
    double mean;
    double std_error;
    std::uint64_t paths_used;
};

struct TerminalPair {
    double at_t1;
    double at_t2;
};

/// Exact joint draw of (X_T1, X_T2) from two independent standard normals:
/// ln X_T1 = ln X0 + (mu1 - sigma1^2/2) T1 + s1 z1,
/// ln X_T2 = ln X0 + (mu2 - sigma2^2/2) T2 + s2 (rho z1 + sqrt(1 - rho^2) z2).
TerminalPair sample_terminal_pair(const PeriodParams& params, double z1, double z2, double spot) noexcept;

/// Discounted mean of the T1 payoff max(intrinsic, V(X_T1) - A, 0), where V is the
/// closed-form European value at T1 (bs_t1). Only X_T1 is sampled.
McEstimate mc_price(const ContractSpec& spec, const MarketData& market, const McConfig& cfg);

/// Simulates both dates. The holder compares exercise, extension and abandonment at
/// T1 from the raw payoff rule and, when extending, receives the realized T2 payoff
/// less the fee. No closed-form extendible or boundary code is involved.
McEstimate mc_price_two_stage(const ContractSpec& spec, const MarketData& market, const McConfig& cfg);

}  // namespace extendo
