#include "fixtures.hpp"
#include "htk/report.hpp"

#include <doctest.h>

using namespace htk;
using nlohmann::json;

namespace {

ProblemSpec p2_spec(std::int64_t lambda) {
    ProblemSpec s;
    s.rho = {{1}, {1}, {1}};
    s.k = 1;
    s.lambda = {lambda};
    s.p = 5;
    return s;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("analyze on P2 passes every check") {
    const auto rep = run("analyze", p2_spec(1));
    CHECK(rep.ok);
    CHECK(rep.text.empty());
    const json &j = rep.json;
    CHECK(j.at("command") == "analyze");
    CHECK(j.at("smooth") == true);
    CHECK(j.at("ok") == true);
    CHECK_FALSE(j.contains("timings_ms"));
    const std::set<std::string> names{"bases_bound", "duality",     "section_count", "toric_oracle",
                                      "reciprocity", "oracle_agreement", "tilting"};
    std::set<std::string> seen;
    for (const auto &[name, value] : j.at("checks").items()) {
        seen.insert(name);
        CHECK(value == "pass");
    }
    CHECK(seen == names);
    CHECK(spec_from_json(j.at("spec")) == p2_spec(1));
}

TEST_CASE("reports are reproducible and seed independent") {
    auto spec = p2_spec(1);
    const std::string first = run("analyze", spec).json.dump();
    CHECK(run("analyze", spec).json.dump() == first);
    const json results = run("analyze", spec).json.at("results");
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        spec.options.seed = seed;
        const json r = run("analyze", spec).json.at("results");
        CHECK(r.at("chambers").at("classes") == results.at("chambers").at("classes"));
        CHECK(r.at("chambers").at("edges") == results.at("chambers").at("edges"));
        CHECK(r.at("ext") == results.at("ext"));
    }
    const auto timed = run("chambers", p2_spec(1), {"json", true});
    CHECK(timed.json.contains("timings_ms"));
}

TEST_CASE("non-smooth parameter skips the checks that need smoothness") {
    const auto rep = run("analyze", p2_spec(-1));
    CHECK(rep.ok);
    CHECK(rep.json.at("smooth") == false);
    const auto &checks = rep.json.at("checks");
    CHECK(checks.at("bases_bound") == "pass");
    for (const char *name : {"duality", "toric_oracle", "reciprocity", "oracle_agreement", "tilting"})
        CHECK(checks.at(name) == "skipped");
}

TEST_CASE("non-unimodular embeddings skip the bases bound") {
    ProblemSpec s;
    s.rho = {{1}, {2}};
    s.k = 1;
    s.lambda = {0};
    s.p = 5;
    const auto rep = run("chambers", s);
    CHECK(rep.json.at("checks").at("bases_bound") == "skipped");
    CHECK(rep.json.at("results").at("smoothness").at("unimodular") == false);
}

TEST_CASE("each command reports its own checks") {
    const std::map<std::string, std::string> own{{"chambers", "bases_bound"},   {"quiver", "duality"},
                                                 {"ext", "toric_oracle"},        {"hilbert", "section_count"},
                                                 {"koszul-check", "reciprocity"}, {"tilting", "tilting"},
                                                 {"oracle", "oracle_agreement"}};
    for (const auto &[cmd, check] : own) {
        const auto rep = run(cmd, p2_spec(1));
        CHECK(rep.json.at("command") == cmd);
        CHECK(rep.json.at("checks").size() == 1);
        CHECK(rep.json.at("checks").at(check) == "pass");
    }
}

TEST_CASE("render formats") {
    const auto j = run("render", p2_spec(1));
    CHECK(j.json.at("results").at("lines").size() == 6);
    const auto svg = run("render", p2_spec(1), {"svg", false});
    CHECK(svg.text.rfind("<svg", 0) == 0);
    const auto ascii = run("render", p2_spec(1), {"ascii", false});
    CHECK(ascii.text.find("C = (0,0,0)") != std::string::npos);
}

TEST_CASE("errors") {
    CHECK(fixtures::error_kind([] { run("frobnicate", p2_spec(1)); }) == ErrorKind::InvalidSpec);
    CHECK(fixtures::error_kind([] { run("analyze", p2_spec(1), {"svg", false}); }) == ErrorKind::InvalidSpec);
    CHECK(fixtures::error_kind([] { run("render", p2_spec(1), {"png", false}); }) == ErrorKind::InvalidSpec);
    auto bad = p2_spec(1);
    bad.rho = {{2}, {4}, {6}};
    CHECK(fixtures::error_kind([&] { run("chambers", bad); }) == ErrorKind::NonSaturated);
}

TEST_CASE("oracle skips when the truncation is too large") {
    setenv("HTK_MAX_CELLS", "10", 1);
    const auto rep = run("oracle", p2_spec(1));
    unsetenv("HTK_MAX_CELLS");
    CHECK(rep.ok);
    CHECK(rep.json.at("checks").at("oracle_agreement") == "skipped");
}

}
