#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chow/runner.hpp"

using namespace chow;
using namespace chow::dsl;

namespace {

std::string shipped_suite_text() {
    std::ifstream in(std::string(CHOW_DATA_DIR) + "/fano_genus6_suite.defs");
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMinimal = R"(
ring P4 = projective_space(4, H)
check T1 {
  describe "point count"
  provenance TRIVIAL
  program integrate(H^4, P4)
  expect 1
}
)";

}  // namespace

TEST_CASE("a minimal defs file parses to one ring and one check") {
    Env env = parse_defs(kMinimal);
    CHECK(env.rings.size() == 1);
    CHECK(env.checks.size() == 1);
    Report r = run_checks(env);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].status == Status::pass);
    CHECK(r.pass == 1);
}

TEST_CASE("syntax errors carry their position") {
    try {
        parse_defs("ring P4 = projective_space(4, H\ncheck X {}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);  // the '(' is never closed; 'check' is unexpected
    }
    CHECK_THROWS_AS(parse_defs("ring X = quotient { gen a 1 top"), ParseError);
    CHECK_THROWS_AS(parse_defs("check C { program 1 + }"), ParseError);
    CHECK_THROWS_AS(parse_defs("bundle B on P = line(H"), ParseError);
}

TEST_CASE("name resolution is strictly in declaration order") {
    SUBCASE("forward reference to a ring") {
        CHECK_THROWS_AS(parse_defs("bundle B on P4 = O\n"
                                   "ring P4 = projective_space(4, H)"),
                        ParseError);
    }
    SUBCASE("forward reference to a bundle") {
        CHECK_THROWS_AS(parse_defs("ring P4 = projective_space(4, H)\n"
                                   "ring Z = projective_bundle(P4, NZ, E)\n"
                                   "bundle NZ on P4 = O + line(H)"),
                        ParseError);
    }
    SUBCASE("unknown identifier in a program") {
        CHECK_THROWS_AS(parse_defs("ring P4 = projective_space(4, H)\n"
                                   "check C { provenance TRIVIAL program Q expect 0 }"),
                        ParseError);
    }
    SUBCASE("unknown function") {
        CHECK_THROWS_AS(parse_defs("ring P4 = projective_space(4, H)\n"
                                   "check C { provenance TRIVIAL program foo(H) expect 0 }"),
                        ParseError);
    }
    SUBCASE("arity mismatch") {
        CHECK_THROWS_AS(parse_defs("ring P4 = projective_space(4, H)\n"
                                   "check C { provenance TRIVIAL program integrate(H) expect 0 }"),
                        ParseError);
    }
    SUBCASE("duplicate names") {
        CHECK_THROWS_AS(parse_defs("ring P4 = projective_space(4, H)\n"
                                   "ring P4 = projective_space(2, K)"),
                        ParseError);
        CHECK_THROWS_AS(parse_defs(std::string(kMinimal) + kMinimal), ParseError);
    }
}

TEST_CASE("the shipped suite parses, resolves and fully passes") {
    Env env = parse_defs(shipped_suite_text());
    CHECK(env.rings.size() == 7);
    CHECK(env.checks.size() == 31);
    Report r = run_checks(env);
    CHECK(r.fail == 0);
    CHECK(r.discrepancy == 3);
    CHECK(r.pass == 28);

    SUBCASE("report entries are ordered by id") {
        for (size_t i = 1; i < r.checks.size(); ++i)
            CHECK(r.checks[i - 1].id < r.checks[i].id);
    }
    SUBCASE("filtering runs exactly the selected checks") {
        Report one = run_checks(env, std::set<std::string>{"C04"});
        REQUIRE(one.checks.size() == 1);
        CHECK(one.checks[0].id == "C04");
        CHECK(one.checks[0].computed == "40*H^3");
    }
    SUBCASE("an empty filter yields an empty report") {
        Report none = run_checks(env, std::set<std::string>{});
        CHECK(none.checks.empty());
        CHECK(none.pass == 0);
        CHECK(none.fail == 0);
        CHECK(none.discrepancy == 0);
    }
}

TEST_CASE("parse-print-parse round trip is stable for the shipped suite") {
    std::string text = shipped_suite_text();
    std::string once = parse_defs_text(text).print();
    std::string twice = parse_defs_text(once).print();
    CHECK(once == twice);
    // and the reprinted file still resolves and passes
    Env env = parse_defs(once);
    Report r = run_checks(env);
    CHECK(r.fail == 0);
}

TEST_CASE("reports are identical at any concurrency level") {
    Env env = parse_defs(shipped_suite_text());
    Report seq = run_checks(env, {}, 1, /*timing=*/false);
    Report par4 = run_checks(env, {}, 4, /*timing=*/false);
    Report par8 = run_checks(env, {}, 8, /*timing=*/false);
    CHECK(report_text(seq) == report_text(par4));
    CHECK(report_text(seq) == report_text(par8));
    CHECK(report_json(seq) == report_json(par4));
}

TEST_CASE("report JSON has the published shape") {
    Env env = parse_defs(shipped_suite_text());
    Report r = run_checks(env, {}, 1, false);
    nlohmann::json j = nlohmann::json::parse(report_json(r));
    REQUIRE(j.contains("version"));
    CHECK(j["version"] == "1");
    REQUIRE(j.contains("checks"));
    REQUIRE(j["checks"].is_array());
    CHECK(j["checks"].size() == 31);
    for (const auto& c : j["checks"]) {
        CHECK(c["id"].is_string());
        CHECK(c["description"].is_string());
        CHECK(c["computed"].is_string());
        CHECK(c["expected"].is_string());
        CHECK(c["status"].is_string());
        CHECK(c["provenance"].is_string());
        CHECK(c["ms"].is_number());
    }
    REQUIRE(j.contains("summary"));
    CHECK(j["summary"]["pass"] == 28);
    CHECK(j["summary"]["fail"] == 0);
    CHECK(j["summary"]["discrepancy"] == 3);
    // text and json report identical statuses
    std::string text = report_text(r);
    for (const auto& c : j["checks"]) {
        std::string line = "[" + c["status"].get<std::string>() + "] " +
                           c["id"].get<std::string>();
        CHECK(text.find(line) != std::string::npos);
    }
}

TEST_CASE("evaluation errors mark a check FAIL without aborting the run") {
    Env env = parse_defs(
        "ring P4 = projective_space(4, H)\n"
        "check BAD { provenance TRIVIAL program integrate(H^4, P4) / 0 expect 1 }\n"
        "check GOOD { provenance TRIVIAL program integrate(H^4, P4) expect 1 }\n");
    Report r = run_checks(env);
    REQUIRE(r.checks.size() == 2);
    CHECK(r.checks[0].status == Status::fail);
    CHECK(r.checks[0].diagnostic.find("division by zero") != std::string::npos);
    CHECK(r.checks[1].status == Status::pass);
    CHECK(r.fail == 1);
    CHECK(r.pass == 1);
}

TEST_CASE("discrepancy bookkeeping") {
    SUBCASE("a documented discrepancy that fails to materialize is a FAIL") {
        Env env = parse_defs(
            "check D { provenance TRIVIAL mode discrepancy program 5 printed 5 note \"t\" }\n");
        Report r = run_checks(env);
        CHECK(r.checks[0].status == Status::fail);
        CHECK(r.checks[0].diagnostic.find("did not materialize") != std::string::npos);
    }
    SUBCASE("drift from the frozen derived value is a FAIL") {
        Env env = parse_defs(
            "check D { provenance TRIVIAL mode discrepancy program 5 printed 7 derived 4 note \"t\" }\n");
        Report r = run_checks(env);
        CHECK(r.checks[0].status == Status::fail);
        CHECK(r.checks[0].diagnostic.find("drifted") != std::string::npos);
    }
    SUBCASE("computed == derived != printed confirms the discrepancy") {
        Env env = parse_defs(
            "check D { provenance TRIVIAL mode discrepancy program 5 printed 7 derived 5 note \"t\" }\n");
        Report r = run_checks(env);
        CHECK(r.checks[0].status == Status::discrepancy_confirmed);
    }
}

TEST_CASE("quotient rings from defs blocks") {
    Env env = parse_defs(
        "ring R = quotient {\n"
        "  gen D 1\n"
        "  gen Ht 1\n"
        "  rule Ht^3 -> D*Ht^2\n"
        "  rule D^3 -> 0\n"
        "  top 4\n"
        "  integral Ht^2*D^2 = 1\n"
        "}\n"
        "check Q { provenance TRIVIAL program integrate(Ht^4, R) expect 1 }\n");
    Report r = run_checks(env);
    CHECK(r.checks[0].status == Status::pass);  // Ht^4 -> D*Ht^3 -> D^2*Ht^2
}

TEST_CASE("rational literals via division") {
    Env env = parse_defs("check H { provenance TRIVIAL program 1/2 + 1/3 expect 5/6 }\n");
    Report r = run_checks(env);
    CHECK(r.checks[0].status == Status::pass);
}

TEST_CASE("bare expressions evaluate over a resolved environment") {
    Env env = parse_defs("ring P4 = projective_space(4, H)\n");
    PresentationPtr p4 = env.ring("P4");

    Value v = evaluate(env, parse_expression("(H + 2*H)^2"), p4);
    Polynomial h = Polynomial::generator(Generator::lookup("H"));
    CHECK(std::get<Polynomial>(v) == Rational(9) * h.pow(2));

    Value s = evaluate(env, parse_expression("3/4 - 1/4"));
    CHECK(std::get<Rational>(s) == Rational(1, 2));

    CHECK_THROWS_AS(parse_expression("1 + (2"), ParseError);
    CHECK_THROWS_AS(parse_expression("1 2"), ParseError);  // trailing input
}

TEST_CASE("the shipped suite's text report matches the golden file") {
    Env env = parse_defs(shipped_suite_text());
    std::string got = report_text(run_checks(env, {}, 1, /*timing=*/false));
    std::ifstream in(std::string(CHOW_DATA_DIR) + "/golden_report.txt");
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(got == ss.str());
}

TEST_CASE("type errors surface as FAIL diagnostics") {
    Env env = parse_defs(
        "ring P4 = projective_space(4, H)\n"
        "check T { provenance TRIVIAL program sym2(H) expect 0 }\n"
        "check U { provenance TRIVIAL program integrate(H^4, P4) + [1, 2] expect 0 }\n");
    Report r = run_checks(env);
    CHECK(r.fail == 2);
    CHECK(r.checks[0].diagnostic.find("expected a K-class") != std::string::npos);
    CHECK(!r.checks[1].diagnostic.empty());
}
