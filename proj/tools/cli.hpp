#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "extendo/extendible.hpp"

namespace extendo::cli {

/// Process exit codes; a total function of the outcome class.
enum ExitCode : int {
    success = 0,
    input_error = 2,
    numeric_failure = 3,
    validation_failure = 4,
};

using Pricer = std::function<PriceReport(const ContractSpec&, const MarketData&, FormulaForm)>;

struct Hooks {
    /// Closed-form pricer used by every command. Tests swap in a broken one to check
    /// that `validate` catches it.
    Pricer pricer = [](const ContractSpec& s, const MarketData& m, FormulaForm f) { return price(s, m, f); };
};

/// Runs one command. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace extendo::cli
