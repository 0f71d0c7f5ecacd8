#pragma once

#include "extendo/vanilla.hpp"

namespace extendo {

/// Holder-extendible European option: exercise at T1 with strike K1, or pay the
/// fee A at T1 to hold a European option with strike K2 expiring at T2.
struct ContractSpec {
    OptionKind kind;
    double strike1;
    double strike2;
    double t1;
    double t2;
    double fee;

    /// Throws InputError(invalid_contract) unless K1, K2 > 0, 0 < T1 < T2 and A >= 0.
    void validate() const;

    friend bool operator==(const ContractSpec&, const ContractSpec&) = default;
};

}  // namespace extendo
