#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "extendo/boundary.hpp"
#include "extendo/contract.hpp"
#include "extendo/extendible.hpp"
#include "extendo/oracle.hpp"
#include "extendo/termstructure.hpp"

namespace extendo {

using Json = nlohmann::ordered_json;

/// Serializes with two-space indentation, keys in insertion order and every
/// floating-point number printed with 17 significant digits. Re-parsing the output
/// and serializing again reproduces it byte for byte.
std::string dump_canonical(const Json& doc);

std::string_view to_string(OptionKind kind) noexcept;
std::string_view to_string(FormulaForm form) noexcept;

Json to_json(const ContractSpec& spec);
Json to_json(const TermStructure& curve);
Json to_json(const MarketData& market);
Json to_json(const PeriodParams& params);
Json to_json(const CriticalValue& value);
Json to_json(const DecisionBoundaries& boundaries);
Json to_json(const AbcdGamma& constants);
Json to_json(const PriceReport& report);
Json to_json(const McEstimate& estimate);

/// Inverse of to_json(PriceReport). Keys not belonging to the report (such as a run
/// manifest) are ignored.
PriceReport price_report_from_json(const Json& doc);

/// `{"kind":"put","K1":100,"K2":95,"T1":0.5,"T2":1.0,"A":1.0}`. Throws
/// InputError(parse) naming the source for missing, unknown or mistyped keys.
ContractSpec contract_from_json(const Json& doc, std::string_view source);

/// Either `{"spot":..., "rate":[...], "carry":[...], "vol":[...]}` with
/// `{"end_time":..., "value":...}` rows (or a CSV path string, resolved against
/// base_dir), or the flat shorthand `{"spot":..., "r":..., "q":..., "sigma":...}`,
/// expanded to flat curves on [0, flat_horizon]. Each curve may use either form.
MarketData market_from_json(const Json& doc, std::string_view source, double flat_horizon,
                            const std::filesystem::path& base_dir = {});

/// CSV with header `end_time,value`, one row per segment. Errors name the line.
TermStructure parse_curve_csv(std::string_view text, std::string_view source);
TermStructure load_curve_csv(const std::filesystem::path& path);

Json load_json_file(const std::filesystem::path& path);
ContractSpec load_contract(const std::filesystem::path& path);
MarketData load_market(const std::filesystem::path& path, double flat_horizon);

}  // namespace extendo
