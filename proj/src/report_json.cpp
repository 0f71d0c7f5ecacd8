#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "extendo/error.hpp"
#include "extendo/json_io.hpp"

namespace extendo {
namespace {

void write_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        throw InputError(InputErrorCode::domain, "non-finite number cannot be written as JSON");
    }
    // "-0" would re-parse as the integer 0, so signed zeros are written unsigned.
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void write(std::string& out, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner;
                out += Json(it.key()).dump();
                out += ": ";
                write(out, it.value(), indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                write(out, j[i], indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            write_number(out, j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

// +-inf travel as strings; JSON has no representation for them.
Json extended(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    return v;
}

double read_extended(const Json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw InputError(InputErrorCode::parse, "expected a number, \"inf\" or \"-inf\", got \"" + s + "\"");
    }
    return j.get<double>();
}

CriticalValue critical_from_json(const Json& j) {
    if (j.is_null()) return CriticalValue::none();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "zero") return CriticalValue::zero();
        if (s == "infinite") return CriticalValue::infinite();
        throw InputError(InputErrorCode::parse, "unknown critical value sentinel \"" + s + "\"");
    }
    return CriticalValue::at(j.get<double>());
}

OptionKind kind_from_string(const std::string& s) {
    if (s == "call") return OptionKind::call;
    if (s == "put") return OptionKind::put;
    throw InputError(InputErrorCode::parse, "kind must be \"call\" or \"put\", got \"" + s + "\"");
}

}  // namespace

std::string dump_canonical(const Json& doc) {
    std::string out;
    write(out, doc, 0);
    out += '\n';
    return out;
}

std::string_view to_string(OptionKind kind) noexcept { return kind == OptionKind::call ? "call" : "put"; }

std::string_view to_string(FormulaForm form) noexcept {
    return form == FormulaForm::rectangle ? "rect" : "diff";
}

Json to_json(const ContractSpec& s) {
    Json j;
    j["kind"] = to_string(s.kind);
    j["K1"] = s.strike1;
    j["K2"] = s.strike2;
    j["T1"] = s.t1;
    j["T2"] = s.t2;
    j["A"] = s.fee;
    return j;
}

Json to_json(const TermStructure& curve) {
    Json rows = Json::array();
    for (const auto& seg : curve.segments()) {
        Json row;
        row["end_time"] = seg.end_time;
        row["value"] = seg.value;
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const MarketData& m) {
    Json j;
    j["spot"] = m.spot;
    j["rate"] = to_json(m.rate);
    j["carry"] = to_json(m.carry);
    j["vol"] = to_json(m.vol);
    return j;
}

Json to_json(const PeriodParams& p) {
    Json j;
    j["T1"] = p.t1;
    j["T2"] = p.t2;
    j["mu1"] = p.mu1;
    j["mu2"] = p.mu2;
    j["r1"] = p.r1;
    j["r2"] = p.r2;
    j["sigma1"] = p.sigma1;
    j["sigma2"] = p.sigma2;
    j["rho"] = p.rho;
    j["r12"] = p.r12;
    j["mu12"] = p.mu12;
    j["sigma12"] = p.sigma12;
    return j;
}

Json to_json(const CriticalValue& v) {
    switch (v.kind()) {
        case CriticalValue::Kind::finite: return v.level();
        case CriticalValue::Kind::zero: return "zero";
        case CriticalValue::Kind::infinite: return "infinite";
        case CriticalValue::Kind::none: return nullptr;
    }
    return nullptr;
}

Json to_json(const DecisionBoundaries& b) {
    Json j;
    j["I1"] = to_json(b.lower);
    j["I2"] = to_json(b.upper);
    j["never_extended"] = b.never_extended;
    j["residual_I1"] = b.lower_residual;
    j["residual_I2"] = b.upper_residual;
    if (b.pocket) {
        j["exercise_pocket"] = {{"J1", b.pocket->lower},
                                {"J2", b.pocket->upper},
                                {"residual_J1", b.pocket->lower_residual},
                                {"residual_J2", b.pocket->upper_residual}};
    } else {
        j["exercise_pocket"] = nullptr;
    }
    return j;
}

Json to_json(const AbcdGamma& g) {
    Json j;
    j["a"] = extended(g.a);
    j["b"] = extended(g.b);
    j["c"] = extended(g.c);
    j["d"] = extended(g.d);
    j["gamma1"] = extended(g.gamma1);
    j["gamma2"] = extended(g.gamma2);
    j["gamma3"] = extended(g.gamma3);
    j["gamma4"] = extended(g.gamma4);
    return j;
}

Json to_json(const PriceReport& r) {
    Json j;
    j["kind"] = to_string(r.kind);
    j["form"] = to_string(r.form);
    j["price"] = r.price;
    j["vanilla_component"] = r.vanilla_component;
    j["terms"] = Json::array();
    for (double t : r.terms) j["terms"].push_back(t);
    j["extension_probability"] = r.extension_probability;
    j["boundaries"] = to_json(r.boundaries);
    j["params"] = to_json(r.params);
    j["constants"] = r.constants ? to_json(*r.constants) : Json(nullptr);
    return j;
}

Json to_json(const McEstimate& e) {
    Json j;
    j["mean"] = e.mean;
    j["std_error"] = e.std_error;
    j["paths"] = e.paths_used;
    return j;
}

PriceReport price_report_from_json(const Json& j) {
    try {
        PriceReport r{};
        r.kind = kind_from_string(j.at("kind").get<std::string>());
        const auto form = j.at("form").get<std::string>();
        if (form != "rect" && form != "diff") {
            throw InputError(InputErrorCode::parse, "form must be \"rect\" or \"diff\"");
        }
        r.form = form == "rect" ? FormulaForm::rectangle : FormulaForm::difference;
        r.price = j.at("price").get<double>();
        r.vanilla_component = j.at("vanilla_component").get<double>();
        const auto& terms = j.at("terms");
        if (terms.size() != r.terms.size()) throw InputError(InputErrorCode::parse, "terms must hold 5 entries");
        for (std::size_t i = 0; i < r.terms.size(); ++i) r.terms[i] = terms[i].get<double>();
        r.extension_probability = j.at("extension_probability").get<double>();

        const auto& b = j.at("boundaries");
        r.boundaries.lower = critical_from_json(b.at("I1"));
        r.boundaries.upper = critical_from_json(b.at("I2"));
        r.boundaries.never_extended = b.at("never_extended").get<bool>();
        r.boundaries.lower_residual = b.at("residual_I1").get<double>();
        r.boundaries.upper_residual = b.at("residual_I2").get<double>();
        if (const auto& pocket = b.at("exercise_pocket"); !pocket.is_null()) {
            r.boundaries.pocket = ExercisePocket{pocket.at("J1").get<double>(), pocket.at("J2").get<double>(),
                                                 pocket.at("residual_J1").get<double>(),
                                                 pocket.at("residual_J2").get<double>()};
        }

        const auto& p = j.at("params");
        r.params.t1 = p.at("T1").get<double>();
        r.params.t2 = p.at("T2").get<double>();
        r.params.mu1 = p.at("mu1").get<double>();
        r.params.mu2 = p.at("mu2").get<double>();
        r.params.r1 = p.at("r1").get<double>();
        r.params.r2 = p.at("r2").get<double>();
        r.params.sigma1 = p.at("sigma1").get<double>();
        r.params.sigma2 = p.at("sigma2").get<double>();
        r.params.rho = p.at("rho").get<double>();
        r.params.r12 = p.at("r12").get<double>();
        r.params.mu12 = p.at("mu12").get<double>();
        r.params.sigma12 = p.at("sigma12").get<double>();

        const auto& c = j.at("constants");
        if (!c.is_null()) {
            r.constants = AbcdGamma{read_extended(c.at("a")),      read_extended(c.at("b")),
                                    read_extended(c.at("c")),      read_extended(c.at("d")),
                                    read_extended(c.at("gamma1")), read_extended(c.at("gamma2")),
                                    read_extended(c.at("gamma3")), read_extended(c.at("gamma4"))};
        }
        return r;
    } catch (const Json::exception& e) {
        throw InputError(InputErrorCode::parse, std::string("price report: ") + e.what());
    }
}

}  // namespace extendo
