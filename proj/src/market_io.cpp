#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "extendo/error.hpp"
#include "extendo/json_io.hpp"

namespace extendo {
namespace {

[[noreturn]] void parse_error(std::string_view source, const std::string& what) {
    std::ostringstream msg;
    msg << source << ": " << what;
    throw InputError(InputErrorCode::parse, msg.str());
}

[[noreturn]] void curve_error(std::string_view where, const std::string& what) {
    std::ostringstream msg;
    msg << where << ": " << what;
    throw InputError(InputErrorCode::invalid_curve, msg.str());
}

// Row checks with a caller-supplied location, so messages point at the offending row.
void check_row(const std::string& where, double end_time, double value, double previous_end) {
    if (!std::isfinite(end_time) || !std::isfinite(value)) curve_error(where, "end_time and value must be finite");
    if (!(end_time > previous_end)) {
        std::ostringstream msg;
        msg << "end_time " << end_time << " is not greater than the previous end_time " << previous_end;
        curve_error(where, msg.str());
    }
}

double number_at(const Json& doc, const char* key, std::string_view source) {
    if (!doc.contains(key)) parse_error(source, std::string("missing key \"") + key + "\"");
    const auto& v = doc.at(key);
    if (!v.is_number()) parse_error(source, std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(InputErrorCode::parse, path.string() + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TermStructure curve_from_json(const Json& node, std::string_view source, const std::string& name,
                              const std::filesystem::path& base_dir) {
    if (node.is_string()) {
        const std::filesystem::path rel = node.get<std::string>();
        return load_curve_csv(rel.is_absolute() ? rel : base_dir / rel);
    }
    if (!node.is_array()) parse_error(source, "\"" + name + "\" must be an array of segments or a CSV path");
    std::vector<Segment> segments;
    double previous = 0.0;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string where = std::string(source) + ": " + name + "[" + std::to_string(i) + "]";
        const auto& row = node[i];
        if (!row.is_object() || !row.contains("end_time") || !row.contains("value") ||
            !row["end_time"].is_number() || !row["value"].is_number()) {
            parse_error(where, "expected {\"end_time\": number, \"value\": number}");
        }
        const double end_time = row["end_time"].get<double>();
        const double value = row["value"].get<double>();
        check_row(where, end_time, value, previous);
        previous = end_time;
        segments.push_back({end_time, value});
    }
    if (segments.empty()) curve_error(std::string(source) + ": " + name, "curve has no segments");
    return TermStructure(std::move(segments));
}

TermStructure pick_curve(const Json& doc, std::string_view source, const char* curve_key, const char* flat_key,
                         double flat_horizon, const std::filesystem::path& base_dir) {
    const bool has_curve = doc.contains(curve_key);
    const bool has_flat = doc.contains(flat_key);
    if (has_curve == has_flat) {
        parse_error(source, std::string("exactly one of \"") + curve_key + "\" and \"" + flat_key + "\" is required");
    }
    if (has_curve) return curve_from_json(doc.at(curve_key), source, curve_key, base_dir);
    const double value = number_at(doc, flat_key, source);
    if (!std::isfinite(value)) parse_error(source, std::string("\"") + flat_key + "\" must be finite");
    return TermStructure::flat(value, flat_horizon);
}

}  // namespace

ContractSpec contract_from_json(const Json& doc, std::string_view source) {
    if (!doc.is_object()) parse_error(source, "contract must be a JSON object");
    static const std::set<std::string> known{"kind", "K1", "K2", "T1", "T2", "A"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!known.count(it.key())) parse_error(source, "unknown key \"" + it.key() + "\"");
    }
    if (!doc.contains("kind") || !doc["kind"].is_string()) parse_error(source, "\"kind\" must be \"call\" or \"put\"");
    const auto kind = doc["kind"].get<std::string>();
    if (kind != "call" && kind != "put") parse_error(source, "\"kind\" must be \"call\" or \"put\", got \"" + kind + "\"");

    ContractSpec spec{kind == "call" ? OptionKind::call : OptionKind::put,
                      number_at(doc, "K1", source),
                      number_at(doc, "K2", source),
                      number_at(doc, "T1", source),
                      number_at(doc, "T2", source),
                      number_at(doc, "A", source)};
    try {
        spec.validate();
    } catch (const InputError& e) {
        throw InputError(e.code(), std::string(source) + ": " + e.what());
    }
    return spec;
}

MarketData market_from_json(const Json& doc, std::string_view source, double flat_horizon,
                            const std::filesystem::path& base_dir) {
    if (!doc.is_object()) parse_error(source, "market must be a JSON object");
    static const std::set<std::string> known{"spot", "rate", "carry", "vol", "r", "q", "sigma"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!known.count(it.key())) parse_error(source, "unknown key \"" + it.key() + "\"");
    }
    MarketData market{number_at(doc, "spot", source),
                      pick_curve(doc, source, "rate", "r", flat_horizon, base_dir),
                      pick_curve(doc, source, "carry", "q", flat_horizon, base_dir),
                      pick_curve(doc, source, "vol", "sigma", flat_horizon, base_dir)};
    try {
        market.validate();
    } catch (const InputError& e) {
        throw InputError(e.code(), std::string(source) + ": " + e.what());
    }
    return market;
}

TermStructure parse_curve_csv(std::string_view text, std::string_view source) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    double previous = 0.0;
    std::vector<Segment> segments;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::string where = std::string(source) + ":" + std::to_string(line_no);
        if (!header_seen) {
            std::string compact;
            for (char ch : line) {
                if (ch != ' ' && ch != '\t') compact += ch;
            }
            if (compact != "end_time,value") parse_error(where, "expected header \"end_time,value\"");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            parse_error(where, "expected two comma-separated numbers");
        }
        double end_time = 0.0;
        double value = 0.0;
        try {
            std::size_t used = 0;
            const std::string lhs = line.substr(0, comma);
            const std::string rhs = line.substr(comma + 1);
            end_time = std::stod(lhs, &used);
            if (lhs.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(lhs);
            value = std::stod(rhs, &used);
            if (rhs.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(rhs);
        } catch (const std::logic_error&) {
            parse_error(where, "expected two comma-separated numbers");
        }
        check_row(where, end_time, value, previous);
        previous = end_time;
        segments.push_back({end_time, value});
    }
    if (!header_seen) parse_error(source, "empty curve file");
    if (segments.empty()) curve_error(std::string(source), "curve has no segments");
    return TermStructure(std::move(segments));
}

TermStructure load_curve_csv(const std::filesystem::path& path) {
    return parse_curve_csv(read_text(path), path.string());
}

Json load_json_file(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // nlohmann reports "at line L, column C" in its message.
        throw InputError(InputErrorCode::parse, path.string() + ": " + e.what());
    }
}

ContractSpec load_contract(const std::filesystem::path& path) {
    return contract_from_json(load_json_file(path), path.string());
}

MarketData load_market(const std::filesystem::path& path, double flat_horizon) {
    return market_from_json(load_json_file(path), path.string(), flat_horizon, path.parent_path());
}

}  // namespace extendo
