// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact
// (integers and rationals); the only tolerances are the wall-clock limits and
// the 95% agreement rate of criterion 5.
#include "htk/hilbert.hpp"
#include "htk/report.hpp"
#include "htk/tilting.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace htk;

namespace {

struct Instance {
    std::string name;
    Arrangement arr;
    ChamberEnumeration en;
    std::uint64_t seed = 0;
};

Arrangement p2(std::int64_t lambda) {
    return {validate_embedding(make_matrix({{1}, {1}, {1}}, 1)), {{lambda}, 5}};
}

Instance make_instance(std::string name, Arrangement arr, std::uint64_t seed = 0) {
    auto en = enumerate_classes(arr);
    return {std::move(name), std::move(arr), std::move(en), seed};
}

std::string spec_name(const ProblemSpec &s) {
    std::ostringstream o;
    o << "n" << s.rho.size() << "k" << s.k << "p" << s.p << "[";
    for (std::size_t i = 0; i < s.lambda.size(); ++i)
        o << (i ? "," : "") << s.lambda[i];
    o << "]";
    return o.str();
}

// Instances every property criterion runs over: P2 and a fixed corpus.
const std::vector<Instance> &instances() {
    static const std::vector<Instance> all = [] {
        std::vector<Instance> out;
        out.push_back(make_instance("P2", p2(1)));
        CorpusBounds b;
        b.n_min = 2;
        b.n_max = 5;
        b.k_min = 1;
        b.p_max = 7;
        b.entry_max = 2;
        // k = n leaves a single point, which exercises nothing; keep 24 with n - k >= 1
        for (const auto &s : corpus_generate(20240611, 48, b)) {
            if (s.k == s.rho.size() || out.size() == 25)
                continue;
            out.push_back(make_instance(spec_name(s), s.arrangement(), s.options.seed));
        }
        return out;
    }();
    return all;
}

// Every arrangement whose polytopes were met in criteria 1-5.
std::vector<Arrangement> &visited() {
    static std::vector<Arrangement> v;
    return v;
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome c1_p2_counts() {
    const auto arr = p2(1);
    visited().push_back(arr);
    const auto en = enumerate_classes(arr);
    if (en.size() != 3)
        return fail("expected 3 classes, got " + std::to_string(en.size()));
    // sorted keys: 0 = (0,0,-2), 1 = (0,0,-1), 2 = (0,0,0); with A the triangle at the origin, A, B, C are 2, 1, 0
    std::map<std::pair<std::size_t, std::size_t>, int> mult;
    for (const auto &e : en.edges())
        ++mult[{e.from, e.to}];
    if (mult[{2, 1}] != 3 || mult[{1, 2}] != 3 || mult[{1, 0}] != 3 || mult[{0, 1}] != 3)
        return fail("arrow multiplicities differ from (3,3)");
    if (mult.count({2, 0}) || mult.count({0, 2}))
        return fail("arrows between A and C");
    if (!is_smooth(arr, en).smooth)
        return fail("lambda = 1 should be smooth");
    for (std::int64_t lambda : {-1, -2, 4, 3, 9, -7}) {
        const auto a = p2(lambda);
        visited().push_back(a);
        const auto e = enumerate_classes(a);
        if (e.size() != 2 || is_smooth(a, e).smooth)
            return fail("lambda = " + std::to_string(lambda) + " should give 2 classes, not smooth");
    }
    return {true, "3 classes, A-B and B-C triple arrows, lambda = -1,-2 mod 5 give 2 classes"};
}

Outcome c2_p2_ext() {
    const auto arr = p2(1);
    const auto en = enumerate_classes(arr);
    const std::size_t Q = 4;
    const auto closed = hom_dims_H(arr, en, Q);
    const auto toric = ext_dims_from_toric(arr, en, Q);
    const auto oh = truncated_dims_oracle(arr, en, build_H(arr, en), Q);
    const auto od = truncated_dims_oracle(arr, en, build_H_dual(arr, en), Q);
    if (!(closed == oh))
        return fail("closed-form H dims disagree with the oracle");
    if (!(toric == od))
        return fail("toric H^! dims disagree with the oracle");
    if (toric.entries[2][2] != std::vector<std::int64_t>{1, 0, 1, 0, 1})
        return fail("(A,A) is not (1,0,1,0,1)");
    if (toric.entries[2][1] != std::vector<std::int64_t>{0, 3, 0, 3, 0})
        return fail("(A,B) is not (0,3,0,3,0)");
    return {true, "9 pairs agree on three routes to Q = 4"};
}

Outcome c3_duality() {
    std::size_t n = 0, pairs = 0, paths = 0;
    for (const auto &in : instances()) {
        visited().push_back(in.arr);
        const auto rep = quadratic_duality_check(build_H(in.arr, in.en), build_H_dual(in.arr, in.en));
        if (!rep.pass())
            return fail("duality fails on " + in.name);
        ++n;
        pairs += rep.pairs.size();
        for (const auto &e : rep.pairs)
            paths += e.paths;
    }
    return {true, std::to_string(n) + " instances (P2 + " + std::to_string(n - 1) + " corpus), " +
                      std::to_string(pairs) + " class pairs, " + std::to_string(paths) + " length-2 paths"};
}

Outcome c4_koszul() {
    const std::size_t Q = 6;
    std::size_t n = 0;
    for (const auto &in : instances()) {
        const auto rep = koszulity_check(hom_dims_H(in.arr, in.en, Q), ext_dims_from_toric(in.arr, in.en, Q), Q);
        if (!rep.pass())
            return fail("reciprocity fails on " + in.name);
        ++n;
    }
    return {true, std::to_string(n) + " instances to Q = 6"};
}

Outcome c5_bases() {
    // the bound, on the corpus and on non-smooth parameters of the same embeddings
    std::size_t checked = 0, nonsmooth = 0;
    for (const auto &in : instances()) {
        const std::size_t nb = bases(in.arr.embedding()).size();
        if (real_class_count(in.arr, in.seed) > nb)
            return fail("bound fails on " + in.name);
        ++checked;
        SeededRng rng(in.seed ^ 0x5eed);
        const auto k = static_cast<std::int64_t>(in.arr.embedding().k());
        for (int t = 0, found = 0; t < 40 && found < 2 && k > 0; ++t) {
            IntVec lambda(static_cast<std::size_t>(k));
            for (auto &v : lambda)
                v = rng.uniform(0, in.arr.p() - 1);
            const Arrangement a(in.arr.embedding(), {lambda, in.arr.p()});
            const auto en = enumerate_classes(a);
            if (is_smooth(a, en, in.seed).smooth)
                continue;
            ++found;
            ++nonsmooth;
            visited().push_back(a);
            if (real_class_count(a, in.seed) > nb)
                return fail("bound fails on a non-smooth parameter of " + in.name);
            ++checked;
        }
    }
    // equality <=> smooth over every residue of a fixed embedding
    const auto emb = validate_embedding(make_matrix({{1, 0}, {0, 1}, {1, 1}, {1, 0}}, 2));
    const std::size_t nb = bases(emb).size();
    const std::int64_t p = 7;
    std::size_t total = 0, agree = 0, smooth_count = 0;
    std::string disagreements;
    for (std::int64_t l1 = 0; l1 < p; ++l1)
        for (std::int64_t l2 = 0; l2 < p; ++l2) {
            const Arrangement a(emb, {{l1, l2}, p});
            visited().push_back(a);
            const auto en = enumerate_classes(a);
            const bool eq = en.size() == nb, sm = is_smooth(a, en).smooth;
            ++total;
            smooth_count += sm;
            if (eq == sm)
                ++agree;
            else
                disagreements += " (" + std::to_string(l1) + "," + std::to_string(l2) + ")";
            if (real_class_count(a) > nb)
                return fail("bound fails in the residue sweep");
        }
    const double rate = static_cast<double>(agree) / static_cast<double>(total);
    std::ostringstream o;
    o << checked << " bound checks (" << nonsmooth << " non-smooth); equality<=>smooth on " << agree << "/"
      << total << " (" << smooth_count << " smooth)";
    if (!disagreements.empty())
        o << ", disagreements:" << disagreements;
    return {rate >= 0.95, o.str()};
}

Outcome c6_toric() {
    std::size_t polytopes = 0, not_simple = 0;
    SeededRng rng(6);
    auto check = [&](const VertexEdgeGraph &g) -> std::optional<std::string> {
        ++polytopes;
        if (!g.simple) {
            ++not_simple; // h-vectors need simple polytopes; only met at non-smooth parameters
            return std::nullopt;
        }
        const auto h = h_vector(g, rng);
        if (h != sr_dims(g))
            return "h-vector differs from SR dimensions";
        if (!is_palindromic(h))
            return "h-vector is not palindromic";
        std::int64_t s = 0;
        for (auto v : h)
            s += v;
        if (s != static_cast<std::int64_t>(g.vertices.size()))
            return "h-vector does not sum to the vertex count";
        return std::nullopt;
    };
    for (const auto &arr : visited()) {
        const auto en = enumerate_classes(arr);
        for (const auto &c : en.classes())
            if (auto bad = check(vertices_and_edges(polytope(arr, c.key))))
                return fail(*bad);
        for (const auto &piece : core_complex(arr, en).pieces)
            if (auto bad = check(vertices_and_edges(polytope(arr, en.classes()[piece.from].key, piece.lift))))
                return fail(*bad);
    }
    return {true, std::to_string(polytopes) + " polytopes from " + std::to_string(visited().size()) +
                      " arrangements (" + std::to_string(not_simple) + " not simple, skipped)"};
}

Outcome c7_tilting() {
    std::size_t relations = 0, rows = 0, pairs = 0;
    for (const auto &in : instances()) {
        const auto iso = verify_end_iso(build_H(in.arr, in.en));
        if (!iso.pass())
            return fail("end-iso substitution fails on " + in.name);
        relations += iso.checked;
        for (const auto &r : degree_table(in.arr, in.en, 3)) {
            if (r.path_degree != r.section_degree)
                return fail("section degree differs from path degree on " + in.name);
            ++rows;
        }
        SeededRng rng(in.seed + 7);
        const auto &emb = in.arr.embedding();
        for (int t = 0; t < 100; ++t) {
            const auto &x = in.en.classes()[rng.below(in.en.size())].key;
            const auto lifts = in.en.lifts_within(emb, x, rng.below(in.en.size()), 4);
            if (lifts.empty())
                continue;
            const auto &y = lifts[rng.below(lifts.size())];
            if (!reverse_shadow_holds(x, y))
                return fail("reverse shadow fails on " + in.name);
            ++pairs;
        }
    }
    return {true, std::to_string(relations) + " relations, " + std::to_string(rows) + " degree rows, " +
                      std::to_string(pairs) + " chamber pairs"};
}

Outcome c8_determinism() {
    ProblemSpec spec;
    spec.rho = {{1}, {1}, {1}};
    spec.k = 1;
    spec.lambda = {1};
    spec.p = 5;
    spec.options.seed = 17;
    const std::string a = run("analyze", spec).json.dump(2), b = run("analyze", spec).json.dump(2);
    if (a != b)
        return fail("analyze reports differ between runs");
    for (const auto &in : instances()) {
        SeededRng rng(in.seed + 8);
        const auto &emb = in.arr.embedding();
        for (int t = 0; t < 10; ++t) {
            const auto &x = in.en.classes()[rng.below(in.en.size())].key;
            const auto lifts = in.en.lifts_within(emb, x, rng.below(in.en.size()), 3);
            const Chamber seed = lifts.empty() ? x : lifts[rng.below(lifts.size())];
            const auto other = enumerate_classes(in.arr, seed);
            if (other.size() != in.en.size())
                return fail("class count depends on the seed chamber for " + in.name);
            for (std::size_t i = 0; i < other.size(); ++i)
                if (other.classes()[i].key != in.en.classes()[i].key)
                    return fail("class keys depend on the seed chamber for " + in.name);
            if (other.edges() != in.en.edges())
                return fail("edges depend on the seed chamber for " + in.name);
        }
    }
    return {true, "byte-identical reports; 10 seed chambers per instance"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "p2-chamber-counts", 1, c1_p2_counts},   {2, "p2-ext-table-three-way", 30, c2_p2_ext},
        {3, "quadratic-duality", 120, c3_duality},   {4, "koszul-reciprocity", 120, c4_koszul},
        {5, "bases-bound", 120, c5_bases},           {6, "h-vector-equals-sr", 0, c6_toric},
        {7, "tilting-verification", 30, c7_tilting}, {8, "determinism", 0, c8_determinism},
    };
    // the shared instance list is built once, outside the timed sections
    const auto t0 = std::chrono::steady_clock::now();
    instances();
    const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("setup: %zu instances in %.2f s\n", instances().size(), setup);

    int failed = 0;
    for (const auto &c : all) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            out = c.run();
        } catch (const std::exception &e) {
            out = fail(std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = out.ok;
        std::string limit = "none";
        if (c.limit_s > 0) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.0f s", c.limit_s);
            limit = buf;
            if (secs > c.limit_s) {
                ok = false;
                out.detail += " (over time)";
            }
        }
        std::printf("%s  %d %-24s %7.2f s (limit %s)  %s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs,
                    limit.c_str(), out.detail.c_str());
        failed += !ok;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
