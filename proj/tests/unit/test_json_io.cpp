#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "benchmark.hpp"
#include "extendo/error.hpp"
#include "extendo/json_io.hpp"

using namespace extendo;

namespace {

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Json, PriceReportRoundTripIsByteIdentical) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const auto c = bench::random_case(rng);
        const PriceReport r = price(c.spec, c.market);
        const std::string text = dump_canonical(to_json(r));
        const PriceReport back = price_report_from_json(Json::parse(text));
        EXPECT_EQ(back.price, r.price);
        EXPECT_EQ(back.boundaries, r.boundaries);
        EXPECT_EQ(back.params, r.params);
        EXPECT_EQ(dump_canonical(to_json(back)), text);
        EXPECT_EQ(dump_canonical(Json::parse(text)), text);
    }
}

TEST(Json, SentinelsForDegenerateBoundaries) {
    const PriceReport r = price(bench::contract(OptionKind::put, 95, 0.0), bench::flat_market());
    const Json j = to_json(r);
    EXPECT_EQ(j["boundaries"]["I2"], "infinite");
    EXPECT_EQ(to_json(CriticalValue::zero()), "zero");
    EXPECT_TRUE(to_json(CriticalValue::none()).is_null());
    const std::string text = dump_canonical(j);
    EXPECT_EQ(dump_canonical(to_json(price_report_from_json(Json::parse(text)))), text);
}

TEST(Json, ExercisePocketRoundTrip) {
    const ContractSpec s{OptionKind::put, 100, 101, 0.5, 1.0, 0.5};
    const PriceReport r = price(s, MarketData::constant(100, 0.0, -0.02, 0.1, 1.0));
    ASSERT_TRUE(r.boundaries.pocket);
    const Json j = to_json(r);
    EXPECT_EQ(j["boundaries"]["exercise_pocket"]["J1"], r.boundaries.pocket->lower);
    const std::string text = dump_canonical(j);
    const PriceReport back = price_report_from_json(Json::parse(text));
    EXPECT_EQ(back.boundaries, r.boundaries);
    EXPECT_EQ(dump_canonical(to_json(back)), text);
    EXPECT_TRUE(to_json(price(bench::contract(OptionKind::put, 95, 1.0), bench::flat_market()))["boundaries"]
                    ["exercise_pocket"]
                        .is_null());
}

TEST(Json, SeventeenSignificantDigits) {
    Json j;
    j["x"] = 0.1;
    EXPECT_NE(dump_canonical(j).find("0.10000000000000001"), std::string::npos);
}

TEST(Json, ContractParsing) {
    const Json doc = Json::parse(R"({"kind":"put","K1":100,"K2":95,"T1":0.5,"T2":1.0,"A":1.0})");
    EXPECT_EQ(contract_from_json(doc, "spec.json"), bench::contract(OptionKind::put, 95, 1.0));
    const std::string unknown = message_of([] {
        contract_from_json(Json::parse(R"({"kind":"put","K1":100,"K2":95,"T1":0.5,"T2":1.0,"A":1.0,"B":2})"), "s.json");
    });
    EXPECT_NE(unknown.find("s.json"), std::string::npos);
    EXPECT_NE(unknown.find("B"), std::string::npos);
    EXPECT_THROW(contract_from_json(Json::parse(R"({"kind":"swap","K1":100,"K2":95,"T1":0.5,"T2":1.0,"A":1.0})"), "s"),
                 InputError);
    EXPECT_THROW(contract_from_json(Json::parse(R"({"kind":"put","K1":"x","K2":95,"T1":0.5,"T2":1.0,"A":1.0})"), "s"),
                 InputError);
    EXPECT_THROW(contract_from_json(Json::parse(R"({"kind":"put","K1":100,"K2":95,"T1":1.5,"T2":1.0,"A":1.0})"), "s"),
                 InputError);
}

TEST(Json, MarketParsing) {
    const MarketData flat = market_from_json(Json::parse(R"({"spot":100,"r":0.08,"q":0.0,"sigma":0.25})"), "m", 1.0);
    EXPECT_EQ(flat.rate, TermStructure::flat(0.08, 1.0));
    EXPECT_EQ(flat.vol, TermStructure::flat(0.25, 1.0));

    const Json curves = Json::parse(R"({"spot":100,
        "rate":[{"end_time":0.5,"value":0.05},{"end_time":1.0,"value":0.06}],
        "carry":[{"end_time":1.0,"value":0.0}],
        "vol":[{"end_time":1.0,"value":0.2}]})");
    EXPECT_EQ(market_from_json(curves, "m", 1.0).rate, TermStructure({{0.5, 0.05}, {1.0, 0.06}}));

    const Json bad = Json::parse(R"({"spot":100,
        "rate":[{"end_time":0.5,"value":0.05},{"end_time":0.25,"value":0.06}],
        "carry":[{"end_time":1.0,"value":0.0}],
        "vol":[{"end_time":1.0,"value":0.2}]})");
    const std::string msg = message_of([&] { market_from_json(bad, "m.json", 1.0); });
    EXPECT_NE(msg.find("m.json"), std::string::npos);
    EXPECT_NE(msg.find("rate[1]"), std::string::npos);
}

TEST(Json, CsvCurves) {
    EXPECT_EQ(parse_curve_csv("end_time,value\n0.5,0.02\n1.0,0.03\n", "c.csv"),
              TermStructure({{0.5, 0.02}, {1.0, 0.03}}));
    const std::string msg = message_of([] { parse_curve_csv("end_time,value\n0.5,0.02\n0.4,abc\n", "c.csv"); });
    EXPECT_NE(msg.find("c.csv:3"), std::string::npos);
    const std::string order = message_of([] { parse_curve_csv("end_time,value\n0.5,0.02\n0.4,0.01\n", "c.csv"); });
    EXPECT_NE(order.find("c.csv:3"), std::string::npos);
    EXPECT_THROW(parse_curve_csv("time,value\n0.5,0.02\n", "c.csv"), InputError);

    const auto dir = std::filesystem::temp_directory_path() / "extendo_json_io_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "vol.csv") << "end_time,value\n0.5,0.2\n1.0,0.3\n";
    const MarketData m = market_from_json(
        Json::parse(R"({"spot":100,"rate":[{"end_time":1.0,"value":0.05}],"carry":[{"end_time":1.0,"value":0.0}],"vol":"vol.csv"})"),
        "m", 1.0, dir);
    EXPECT_EQ(m.vol, TermStructure({{0.5, 0.2}, {1.0, 0.3}}));
    std::filesystem::remove_all(dir);
}
