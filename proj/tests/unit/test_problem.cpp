#include "fixtures.hpp"
#include "htk/problem.hpp"

#include <doctest.h>

using namespace htk;
using nlohmann::json;

TEST_SUITE("problem") {

TEST_CASE("spec JSON round trip") {
    ProblemSpec s;
    s.rho = {{1, 0}, {0, 1}, {1, 1}, {1, 0}};
    s.k = 2;
    s.lambda = {1, 3};
    s.p = 5;
    s.options = {6, 42, 3};
    CHECK(spec_from_json(to_json(s)) == s);
    CHECK(spec_from_json(json::parse(to_json(s).dump())) == s);

    ProblemSpec circle;
    circle.rho = {{}};
    circle.k = 0;
    circle.p = 3;
    CHECK(spec_from_json(to_json(circle)) == circle);
}

TEST_CASE("spec parsing") {
    const auto s = spec_from_json(json::parse(R"({"rho": [["1"], [1], [1]], "lambda": ["-2"], "p": "7"})"));
    CHECK(s.k == 1);
    CHECK(s.lambda == IntVec{-2});
    CHECK(s.p == 7);
    CHECK(s.options == ProblemOptions{});
    CHECK(s.arrangement().n() == 3);

    auto bad = [](const char *text) {
        return fixtures::error_kind([&] { spec_from_json(json::parse(text)); });
    };
    const auto invalid = std::optional<ErrorKind>(ErrorKind::InvalidSpec);
    CHECK(bad(R"([1, 2])") == invalid);
    CHECK(bad(R"({"rho": [[1]], "lambda": [0]})") == invalid);
    CHECK(bad(R"({"rho": [[1], [1, 2]], "lambda": [0], "p": 3})") == invalid);
    CHECK(bad(R"({"rho": [[1]], "lambda": [0, 1], "p": 3})") == invalid);
    CHECK(bad(R"({"rho": [[1]], "lambda": [0], "p": 1})") == invalid);
    CHECK(bad(R"({"rho": [["x"]], "lambda": [0], "p": 3})") == invalid);
    CHECK(bad(R"({"rho": [[1.5]], "lambda": [0], "p": 3})") == invalid);
    CHECK(bad(R"({"rho": [[1]], "lambda": [0], "p": 3, "options": 4})") == invalid);
    CHECK(bad(R"({"rho": [], "lambda": [], "p": 3})") == invalid);

    // well-formed JSON, bad embedding
    const auto dep = spec_from_json(json::parse(R"({"rho": [[1, 2], [2, 4]], "lambda": [0, 0], "p": 3})"));
    CHECK(fixtures::error_kind([&] { dep.arrangement(); }) == ErrorKind::RankDeficient);
    const auto sat = spec_from_json(json::parse(R"({"rho": [[2], [4]], "lambda": [0], "p": 3})"));
    CHECK(fixtures::error_kind([&] { sat.arrangement(); }) == ErrorKind::NonSaturated);
}

TEST_CASE("corpus is deterministic and within bounds") {
    CorpusBounds b;
    b.n_max = 5;
    b.p_max = 7;
    const auto a = corpus_generate(11, 20, b), c = corpus_generate(11, 20, b);
    CHECK(a == c);
    CHECK(corpus_generate(12, 20, b) != a);
    for (const auto &s : a) {
        CHECK(s.rho.size() >= b.n_min);
        CHECK(s.rho.size() <= b.n_max);
        CHECK(s.k <= b.k_max);
        CHECK(s.p <= b.p_max);
        CHECK(Parameter{{}, s.p}.p_is_prime());
        for (const auto &row : s.rho)
            for (auto v : row)
                CHECK(std::abs(v) <= b.entry_max);
        const auto arr = s.arrangement();
        CHECK(is_unimodular(arr.embedding()));
        const auto en = enumerate_classes(arr);
        CHECK(is_smooth(arr, en, s.options.seed).smooth);
    }
}

TEST_CASE("corpus corner bounds") {
    CorpusBounds tori;
    tori.k_min = tori.k_max = 0;
    tori.budget = 1; // every torus is accepted on the first draw
    CHECK(corpus_generate(5, 10, tori).size() == 10);

    CorpusBounds lines;
    lines.n_min = lines.n_max = 3;
    lines.k_min = lines.k_max = 1;
    lines.entry_max = 1;
    lines.p_max = 5;
    bool saw_p2 = false;
    for (const auto &s : corpus_generate(3, 200, lines)) {
        const IntVec col{s.rho[0][0], s.rho[1][0], s.rho[2][0]};
        saw_p2 = saw_p2 || col == IntVec{1, 1, 1} || col == IntVec{-1, -1, -1};
    }
    CHECK(saw_p2);

    CorpusBounds broken;
    broken.n_min = 4;
    broken.n_max = 2;
    CHECK(fixtures::error_kind([&] { corpus_generate(0, 1, broken); }) == ErrorKind::InvalidInput);

    CorpusBounds hopeless; // only zero entries with k = 1: always rank deficient
    hopeless.k_min = hopeless.k_max = 1;
    hopeless.entry_max = 0;
    hopeless.budget = 50;
    CHECK(fixtures::error_kind([&] { corpus_generate(0, 1, hopeless); }) == ErrorKind::ExhaustedRejectionBudget);
}

}
