#include "fixtures.hpp"

#include <doctest.h>

using namespace htk;

namespace {

std::size_t count_edges(const ChamberEnumeration &en, std::size_t a, std::size_t b) {
    std::size_t c = 0;
    for (const auto &e : en.edges())
        if (e.from == a && e.to == b)
            ++c;
    return c;
}

std::set<IntVec> restrictions(const Arrangement &arr, const ChamberEnumeration &en) {
    std::set<IntVec> out;
    for (const auto &c : en.classes())
        out.insert(arr.embedding().restrict_to_t(c.key));
    return out;
}

} // namespace

TEST_SUITE("arrangement") {

TEST_CASE("P2 at lambda = 1: three classes in a line") {
    const auto arr = fixtures::p2(1);
    const auto en = enumerate_classes(arr);
    REQUIRE(en.size() == 3);
    CHECK(en.classes()[0].key == IntVec{0, 0, -2});
    CHECK(en.classes()[1].key == IntVec{0, 0, -1});
    CHECK(en.classes()[2].key == IntVec{0, 0, 0});
    // 3 arrows each way between neighbours, none between the ends
    CHECK(count_edges(en, 2, 1) == 3);
    CHECK(count_edges(en, 1, 2) == 3);
    CHECK(count_edges(en, 1, 0) == 3);
    CHECK(count_edges(en, 0, 1) == 3);
    CHECK(count_edges(en, 0, 2) == 0);
    CHECK(count_edges(en, 2, 0) == 0);
    const auto sm = is_smooth(arr, en);
    CHECK(sm.smooth);
    CHECK(sm.reason == SmoothReason::BasesCount);
}

TEST_CASE("P2 at lambda = -1, -2 mod 5: two classes, not smooth") {
    for (std::int64_t lambda : {-1, -2, 3, 4, 8}) {
        const auto arr = fixtures::p2(lambda);
        const auto en = enumerate_classes(arr);
        CHECK(en.size() == 2);
        const auto sm = is_smooth(arr, en);
        CHECK_FALSE(sm.smooth);
        CHECK(sm.reason == SmoothReason::PerturbationDisagree);
        CHECK(real_class_count(arr) == 3);
    }
}

TEST_CASE("witnesses lie in the coset and in their chamber") {
    for (std::int64_t lambda : {0, 1, 2, -1}) {
        const auto arr = fixtures::p2(lambda);
        const auto en = enumerate_classes(arr);
        for (const auto &c : en.classes()) {
            CHECK(arr.in_coset(c.witness));
            CHECK(arr.weight_to_chamber(c.witness) == c.key);
        }
    }
}

TEST_CASE("classes match the fundamental-domain sweep") {
    const std::vector<std::vector<std::vector<std::int64_t>>> rhos{
        {{1}, {1}, {1}}, {{1, 0}, {0, 1}, {1, 1}, {1, 0}}, {{1}, {2}}, {{1, 0}, {0, 1}, {1, 1}, {1, -1}},
        {{1}, {-1}, {1}, {0}}};
    for (const auto &rows : rhos) {
        const std::size_t k = rows.front().size();
        const auto emb = validate_embedding(make_matrix(rows, k));
        for (std::int64_t p : {2, 3, 5})
            for (std::int64_t l = -3; l <= 3; ++l) {
                IntVec lambda(k, l);
                lambda[0] = l * 2 + 1;
                const Arrangement arr(emb, {lambda, p});
                const auto en = enumerate_classes(arr);
                CHECK(restrictions(arr, en) == fixtures::sweep_classes(arr));
            }
    }
}

TEST_CASE("enumeration does not depend on the seed chamber") {
    const auto emb = validate_embedding(make_matrix({{1, 0}, {0, 1}, {1, 1}, {1, 0}}, 2));
    const Arrangement arr(emb, {{1, 3}, 5});
    const auto base = enumerate_classes(arr);
    SeededRng rng(9);
    for (int t = 0; t < 10; ++t) {
        const auto &cls = base.classes()[rng.below(base.size())];
        IntVec seed = cls.key;
        for (std::size_t r = 0; r < arr.d(); ++r) {
            const auto c = rng.uniform(-4, 4);
            for (std::size_t i = 0; i < arr.n(); ++i)
                seed[i] += c * emb.tperp64()[r][i];
        }
        const auto other = enumerate_classes(arr, seed);
        REQUIRE(other.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(other.classes()[i].key == base.classes()[i].key);
        CHECK(other.edges().size() == base.edges().size());
    }
}

TEST_CASE("empty seed chamber is rejected") {
    const auto arr = fixtures::p2(1);
    CHECK_THROWS_AS(enumerate_classes(arr, IntVec{1, 1, 1}), Error);
}

TEST_CASE("circle: one class adjacent to itself across both walls") {
    const auto arr = fixtures::torus(1, 4);
    const auto en = enumerate_classes(arr);
    CHECK(en.size() == 1);
    CHECK(en.edges().size() == 2);
    CHECK(en.alpha(0, 0).size() == 2);
    CHECK(is_smooth(arr, en).smooth);
}

TEST_CASE("k = 0 is always smooth") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto arr = fixtures::torus(n, 3);
        const auto en = enumerate_classes(arr);
        CHECK(en.size() == 1);
        CHECK(is_smooth(arr, en).smooth);
    }
}

TEST_CASE("integral nonempty implies real nonempty") {
    const auto arr = fixtures::p2(1);
    SeededRng rng(2);
    for (int t = 0; t < 20; ++t) {
        IntVec x{rng.uniform(-2, 2), rng.uniform(-2, 2), 0};
        x[2] = rng.uniform(-3, 1);
        auto eps = sample_perturbation(rng, 3);
        if (!arr.is_nonempty_integral(x))
            continue;
        CHECK(arr.is_nonempty_real(x, eps));
    }
    // the middle chamber from the picture
    std::vector<Rational> eps{Rational(1, 7), Rational(2, 9), Rational(1, 11)};
    CHECK(arr.is_nonempty_real(IntVec{0, 0, -1}, eps));
}

TEST_CASE("non-smooth lambda: a real chamber without lattice points") {
    const auto arr = fixtures::p2(-1);
    const auto en = enumerate_classes(arr);
    const std::vector<Rational> eps{Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    const auto keys = real_class_keys(arr, eps, en.classes()[0].key);
    CHECK(keys.size() == 3);
    bool found = false;
    for (const auto &k : keys)
        if (!arr.is_nonempty_integral(k))
            found = true;
    CHECK(found);
}

TEST_CASE("degenerate perturbation is reported") {
    // lambda = -1: the box of (0,0,0) shifted by eps with sum 1 only touches the plane
    const auto arr = fixtures::p2(-1);
    const std::vector<Rational> eps{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
    try {
        arr.is_nonempty_real(IntVec{0, 0, 0}, eps);
        FAIL("expected DegeneratePerturbation");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::DegeneratePerturbation);
    }
}

TEST_CASE("weight_to_chamber and delta") {
    const auto arr = fixtures::p2(1);
    CHECK(arr.weight_to_chamber(IntVec{0, 0, 1}) == IntVec{0, 0, 0});
    CHECK(arr.weight_to_chamber(IntVec{-1, 7, -5}) == IntVec{-1, 1, -1});
    CHECK_THROWS_AS(arr.weight_to_chamber(IntVec{0, 0, 0}), Error);
    CHECK(arr.delta(IntVec{0, 0, 1}, IntVec{-1, 7, -5}) == IntVec{1, 1, 1});
}

TEST_CASE("eta: nonnegative, zero exactly on geodesics") {
    SeededRng rng(4);
    for (int t = 0; t < 200; ++t) {
        IntVec x(4), y(4), u(4);
        for (std::size_t i = 0; i < 4; ++i) {
            x[i] = rng.uniform(-3, 3);
            y[i] = rng.uniform(-3, 3);
            u[i] = rng.uniform(-3, 3);
        }
        const auto e = eta(x, y, u);
        bool zero = true;
        for (auto v : e) {
            CHECK(v >= 0);
            zero = zero && v == 0;
        }
        const bool geodesic = l1_norm(difference(x, y)) + l1_norm(difference(y, u)) == l1_norm(difference(x, u));
        CHECK(zero == geodesic);
    }
}

TEST_CASE("delta counts crossed hyperplanes") {
    // oracle: count levels kp - 1/2 strictly between the two weights
    const auto arr = fixtures::p2(1);
    SeededRng rng(8);
    for (int t = 0; t < 100; ++t) {
        IntVec a{rng.uniform(-12, 12), rng.uniform(-12, 12), 0}, b{rng.uniform(-12, 12), rng.uniform(-12, 12), 0};
        a[2] = 1 - a[0] - a[1];
        b[2] = 1 - b[0] - b[1];
        const auto d = arr.delta(a, b);
        for (std::size_t i = 0; i < 3; ++i) {
            std::int64_t crossed = 0;
            const auto lo = std::min(a[i], b[i]), hi = std::max(a[i], b[i]);
            for (std::int64_t v = lo; v < hi; ++v)
                if (floor_div(v + 1, 5) != floor_div(v, 5))
                    ++crossed;
            CHECK(d[i] == crossed);
        }
    }
}

}
