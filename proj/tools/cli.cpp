#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

#include "extendo/error.hpp"
#include "extendo/json_io.hpp"
#include "extendo/oracle.hpp"

#ifndef EXTENDO_VERSION
#define EXTENDO_VERSION "0.0.0"
#endif

namespace extendo::cli {
namespace {

constexpr double kPassThresholdSe = 3.0;
constexpr double kErratumThresholdSe = 10.0;

struct Options {
    std::string spec_path;
    std::string market_path;
    std::string form = "rect";
    std::uint64_t paths = 1'000'000;
    std::uint64_t seed = 20100928;
    bool table = false;
    bool reproduce_errata = false;
};

struct Inputs {
    ContractSpec spec;
    MarketData market;
};

Inputs load_inputs(const Options& opt) {
    ContractSpec spec = load_contract(opt.spec_path);
    MarketData market = load_market(opt.market_path, spec.t2);
    return {spec, std::move(market)};
}

// SOURCE_DATE_EPOCH pins the timestamp so repeated runs produce identical documents.
std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
        char* end = nullptr;
        const long long v = std::strtoll(epoch, &end, 10);
        if (*end != '\0' || v < 0) {
            throw InputError(InputErrorCode::parse, "SOURCE_DATE_EPOCH must be a non-negative integer");
        }
        t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

unsigned thread_cap() {
    const char* env = std::getenv("EXTENDO_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0 || v > 4096) {
        throw InputError(InputErrorCode::parse, std::string("EXTENDO_THREADS must be an integer in [0, 4096], got \"") +
                                                    env + "\"");
    }
    return static_cast<unsigned>(v);
}

Json manifest(const std::string& command, const Options& opt, const Inputs& in) {
    Json m;
    m["command"] = command;
    m["tool"] = "extendo";
    m["version"] = EXTENDO_VERSION;
    m["timestamp"] = timestamp();
    m["inputs"] = {{"spec", opt.spec_path}, {"market", opt.market_path}};
    m["spec"] = to_json(in.spec);
    m["market"] = to_json(in.market);
    return m;
}

FormulaForm parse_form(const std::string& s) {
    return s == "diff" ? FormulaForm::difference : FormulaForm::rectangle;
}

// Deviation in standard errors; null when the estimator has no spread.
Json deviation(double value, const McEstimate& est) {
    if (est.std_error > 0.0) return (value - est.mean) / est.std_error;
    return nullptr;
}

bool within(double value, const McEstimate& est, double threshold) {
    if (est.std_error > 0.0) return std::abs(value - est.mean) <= threshold * est.std_error;
    return std::abs(value - est.mean) <= 1e-12 * std::max(1.0, std::abs(value));
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else if (j.is_number_float()) {
        std::ostringstream v;
        v << std::setprecision(12) << j.get<double>();
        rows.emplace_back(prefix, v.str());
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

void emit(const Json& doc, bool table, std::ostream& out) {
    if (!table) {
        out << dump_canonical(doc);
        return;
    }
    Json body = doc;
    body.erase("manifest");
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(body, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& r : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << r.first << r.second << '\n';
}

int cmd_price(const Options& opt, const Hooks& hooks, std::ostream& out) {
    const Inputs in = load_inputs(opt);
    const PriceReport report = hooks.pricer(in.spec, in.market, parse_form(opt.form));
    Json doc;
    doc["manifest"] = manifest("price", opt, in);
    const Json body = to_json(report);
    for (const auto& [key, value] : body.items()) doc[key] = value;
    if (opt.reproduce_errata) {
        if (in.spec.kind != OptionKind::put) {
            throw InputError(InputErrorCode::unsupported_setting, "--reproduce-errata applies to puts only");
        }
        doc["errata"] = {
            {"longstaff1990", errata::price_put_longstaff1990(in.spec, in.market, errata::reproduce_errata)},
            {"haug1998", errata::price_put_haug1998(in.spec, in.market, errata::reproduce_errata)},
        };
    }
    emit(doc, opt.table, out);
    return success;
}

int cmd_boundaries(const Options& opt, std::ostream& out) {
    const Inputs in = load_inputs(opt);
    const PeriodParams params = period_params(in.market, in.spec.t1, in.spec.t2);
    const DecisionBoundaries b = solve_boundaries(in.spec, params);
    Json doc;
    doc["manifest"] = manifest("boundaries", opt, in);
    doc["kind"] = to_string(in.spec.kind);
    const Json body = to_json(b);
    for (const auto& [key, value] : body.items()) doc[key] = value;
    doc["params"] = to_json(params);
    emit(doc, opt.table, out);
    return success;
}

McConfig mc_config(const Options& opt) {
    McConfig cfg;
    cfg.paths = opt.paths;
    cfg.seed = opt.seed;
    cfg.antithetic = true;
    cfg.threads = thread_cap();
    return cfg;
}

int cmd_validate(const Options& opt, const Hooks& hooks, std::ostream& out) {
    const Inputs in = load_inputs(opt);
    const McConfig cfg = mc_config(opt);
    const double closed = hooks.pricer(in.spec, in.market, parse_form(opt.form)).price;
    const McEstimate mc = mc_price(in.spec, in.market, cfg);
    const McEstimate two = mc_price_two_stage(in.spec, in.market, cfg);
    const bool pass = within(closed, mc, kPassThresholdSe) && within(closed, two, kPassThresholdSe);

    Json doc;
    doc["manifest"] = manifest("validate", opt, in);
    doc["manifest"]["paths"] = cfg.paths;
    doc["manifest"]["seed"] = cfg.seed;
    doc["kind"] = to_string(in.spec.kind);
    doc["closed_form"] = closed;
    doc["mc"] = to_json(mc);
    doc["mc_two_stage"] = to_json(two);
    doc["deviation_se"] = deviation(closed, mc);
    doc["deviation_two_stage_se"] = deviation(closed, two);
    const double combined = std::hypot(mc.std_error, two.std_error);
    doc["estimator_gap_combined_se"] = combined > 0.0 ? Json((mc.mean - two.mean) / combined) : Json(nullptr);
    doc["threshold_se"] = kPassThresholdSe;
    doc["pass"] = pass;
    emit(doc, opt.table, out);
    return pass ? success : validation_failure;
}

int cmd_errata(const Options& opt, const Hooks& hooks, std::ostream& out) {
    const Inputs in = load_inputs(opt);
    if (in.spec.kind != OptionKind::put) {
        throw InputError(InputErrorCode::unsupported_setting, "the errata report covers the extendible put");
    }
    const double longstaff = errata::price_put_longstaff1990(in.spec, in.market, errata::reproduce_errata);
    const double haug = errata::price_put_haug1998(in.spec, in.market, errata::reproduce_errata);
    const double corrected = hooks.pricer(in.spec, in.market, FormulaForm::rectangle).price;
    const McEstimate mc = mc_price(in.spec, in.market, mc_config(opt));

    Json rows = Json::array();
    for (const auto& [name, value] : {std::pair<const char*, double>{"corrected", corrected},
                                      {"longstaff1990_as_published", longstaff},
                                      {"haug1998_as_published", haug}}) {
        Json row;
        row["formula"] = name;
        row["value"] = value;
        row["deviation_se"] = deviation(value, mc);
        row["within_3se"] = within(value, mc, kPassThresholdSe);
        row["beyond_10se"] = !within(value, mc, kErratumThresholdSe);
        rows.push_back(row);
    }
    const bool corrected_ok = within(corrected, mc, kPassThresholdSe);

    Json doc;
    doc["manifest"] = manifest("errata", opt, in);
    doc["manifest"]["paths"] = opt.paths;
    doc["manifest"]["seed"] = opt.seed;
    doc["mc"] = to_json(mc);
    doc["rows"] = rows;
    doc["corrected_matches_mc"] = corrected_ok;
    emit(doc, opt.table, out);
    return corrected_ok ? success : validation_failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Holder-extendible option pricer"};
    app.require_subcommand(1);
    Options opt;

    auto add_inputs = [&](CLI::App* cmd) {
        cmd->add_option("--spec", opt.spec_path, "Contract JSON file")->required();
        cmd->add_option("--market", opt.market_path, "Market JSON file")->required();
        cmd->add_flag("--table", opt.table, "Aligned text instead of JSON");
    };
    auto add_mc = [&](CLI::App* cmd) {
        cmd->add_option("--paths", opt.paths, "Monte Carlo paths (even)");
        cmd->add_option("--seed", opt.seed, "Random stream seed");
    };

    auto* price_cmd = app.add_subcommand("price", "Closed-form price report");
    add_inputs(price_cmd);
    price_cmd->add_option("--form", opt.form, "Algebraic form")->check(CLI::IsMember({"rect", "diff"}));
    price_cmd->add_flag("--reproduce-errata", opt.reproduce_errata, "Also evaluate the misprinted put formulas");

    auto* boundaries_cmd = app.add_subcommand("boundaries", "Critical values I1, I2");
    add_inputs(boundaries_cmd);

    auto* validate_cmd = app.add_subcommand("validate", "Closed form against the Monte Carlo oracle");
    add_inputs(validate_cmd);
    add_mc(validate_cmd);
    validate_cmd->add_option("--form", opt.form, "Algebraic form")->check(CLI::IsMember({"rect", "diff"}));

    auto* errata_cmd = app.add_subcommand("errata", "Corrected vs misprinted put formulas against Monte Carlo");
    add_inputs(errata_cmd);
    add_mc(errata_cmd);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : input_error;
    }

    try {
        if (*price_cmd) return cmd_price(opt, hooks, out);
        if (*boundaries_cmd) return cmd_boundaries(opt, out);
        if (*validate_cmd) return cmd_validate(opt, hooks, out);
        return cmd_errata(opt, hooks, out);
    } catch (const InputError& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return input_error;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return numeric_failure;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return numeric_failure;
    }
}

}  // namespace extendo::cli
