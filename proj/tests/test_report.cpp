#include <gtest/gtest.h>

#include "hgm/report.hpp"

using namespace hgm;
using nlohmann::json;

namespace {

const BaseField Q = BaseField::rationals();

json strip_timing(json j) {
    j.erase("timing");
    return j;
}

}  // namespace

TEST(Report, ParseBaseAndRadicand) {
    EXPECT_TRUE(parse_base("Q").is_rational());
    EXPECT_EQ(parse_base("Qsqrt-5").d(), -5);
    EXPECT_THROW(parse_base("Qsqrt5"), domain_error);
    EXPECT_THROW(parse_base("Qsqrt-4"), domain_error);
    EXPECT_THROW(parse_base("R"), domain_error);
    BaseField K = parse_base("Qsqrt-5");
    EXPECT_EQ(parse_k_elem(K, "3+2*w"), KElem(K, 3, 2));
    EXPECT_EQ(parse_k_elem(K, "-w"), KElem(K, 0, -1));
    EXPECT_EQ(parse_k_elem(K, "w - 4"), KElem(K, -4, 1));
    EXPECT_EQ(parse_k_elem(K, "10"), KElem(K, 10));
    EXPECT_EQ(parse_k_elem(Q, "-17"), KElem(Q, -17));
    EXPECT_THROW(parse_k_elem(Q, "w"), domain_error);
    EXPECT_THROW(parse_k_elem(K, "3+*w"), domain_error);
    EXPECT_THROW(parse_k_elem(K, "1/2"), domain_error);
    EXPECT_THROW(parse_k_elem(K, ""), domain_error);
}

TEST(Report, GeneratorText) {
    RadicandContext ctx(Q, 3, KElem(Q, 10));
    LElem x = ctx.zero();
    for (unsigned j = 0; j < 3; ++j) x[j] = KElem(Q, Rat(1, 3));
    EXPECT_EQ(generator_text(x), "(1 + a + a^2)/3");
    x[2] = KElem(Q, Rat(-1, 6));
    EXPECT_EQ(generator_text(x), "(2 + 2*a - a^2)/6");
    EXPECT_EQ(generator_text(ctx.zero()), "0");
    EXPECT_EQ(generator_text(ctx.alpha_pow(1)), "a");
}

TEST(Report, AnalyzeVerdictsAndExitCodes) {
    auto r10 = analyze(Q, 3, KElem(Q, 10));
    EXPECT_EQ(r10.verdict(), "free");
    EXPECT_EQ(r10.exit_code(), 0);
    EXPECT_EQ(generator_text(*r10.certificate->generator), "(1 + a + a^2)/3");
    auto r2 = analyze(Q, 3, KElem(Q, 2));
    EXPECT_EQ(r2.verdict(), "wild");
    EXPECT_EQ(r2.exit_code(), 20);
    BaseField K = parse_base("Qsqrt-5");
    auto rk = analyze(K, 3, KElem(K, 10));
    EXPECT_EQ(rk.verdict(), "not-free-class-obstruction");
    EXPECT_EQ(rk.exit_code(), 10);
    auto r17 = analyze(Q, 3, KElem(Q, 17));
    EXPECT_EQ(*r17.tameness.normalized, KElem(Q, 136));
    EXPECT_EQ(r17.exit_code(), 0);
}

TEST(Report, JsonRoundTripAndDeterminism) {
    auto j1 = to_json(analyze(Q, 3, KElem(Q, 28)));
    auto j2 = to_json(analyze(Q, 3, KElem(Q, 28)));
    EXPECT_EQ(strip_timing(j1).dump(), strip_timing(j2).dump());
    EXPECT_EQ(json::parse(j1.dump()), j1);
    EXPECT_EQ(j1["schema_version"], report_schema_version);
    EXPECT_EQ(j1["freeness"]["generator"][2]["x"]["num"], "-1");
    EXPECT_EQ(j1["freeness"]["generator"][2]["x"]["den"], "6");
    LElem g = json_io::lelem_from(Q, j1["freeness"]["generator"]);
    EXPECT_EQ(g[2], KElem(Q, Rat(-1, 6)));
    for (const auto& r : {Rat(0), Rat(-7, 3), Rat(Int("123456789012345678901234567890"), 7)})
        EXPECT_EQ(json_io::rat_from(json::parse(json_io::rat(r).dump())), r);
    EXPECT_THROW(json_io::rat_from(json{{"num", "1"}, {"den", "0"}}), schema_error);
    EXPECT_THROW(json_io::rat_from(json{{"num", 1}, {"den", "2"}}), schema_error);
}

TEST(Report, VerifyPassesAndDetectsTampering) {
    auto j = to_json(analyze(Q, 3, KElem(Q, 10)));
    EXPECT_TRUE(verify_report(j).ok);
    auto bad = j;
    bad["freeness"]["generator"][1]["x"]["num"] = "2";
    auto res = verify_report(bad);
    EXPECT_FALSE(res.ok);
    EXPECT_FALSE(res.problems.empty());
    auto bad2 = j;
    bad2["dedekind"][0]["gcd"] = json::array({0, 1});
    EXPECT_FALSE(verify_report(bad2).ok);
    auto stale = j;
    stale["schema_version"] = 0;
    EXPECT_THROW(verify_report(stale), schema_error);
    EXPECT_THROW(verify_report(json::object()), schema_error);
    BaseField K = parse_base("Qsqrt-5");
    EXPECT_TRUE(verify_report(to_json(analyze(K, 3, KElem(K, 10)))).ok);
    EXPECT_TRUE(verify_report(to_json(analyze(Q, 3, KElem(Q, 2)))).ok);
}

TEST(Report, ResourceBoundIsEnforced) {
    Limits lim;
    lim.max_norm = 100;
    EXPECT_THROW(analyze(Q, 3, KElem(Q, 1000003), lim), resource_error);
}

TEST(Report, Fnv1a) {
    EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
    EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
}
