#include "htk/polytope.hpp"

#include "htk/lp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace htk {

std::vector<Rational> RationalPolytope::to_weight(std::span<const Rational> w) const {
    std::vector<Rational> a = origin;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t c = 0; c < dim(); ++c)
            a[i] += basis(i, c) * w[c];
    return a;
}

namespace {

struct Row {
    std::vector<Rational> coef;
    Rational rhs;
    std::vector<Hyperplane> labels;
};

RatMatrix stack(const std::vector<Row> &rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r].coef[c];
    return m;
}

std::vector<Rational> rhs_of(const std::vector<Row> &rows) {
    std::vector<Rational> b;
    for (const auto &r : rows)
        b.push_back(r.rhs);
    return b;
}

// Scale so the first nonzero coefficient has absolute value one.
void normalize(Row &row) {
    for (const auto &c : row.coef)
        if (c != 0) {
            const Rational s = abs(c);
            for (auto &v : row.coef)
                v /= s;
            row.rhs /= s;
            return;
        }
}

} // namespace

std::optional<RationalPolytope> try_polytope(const Arrangement &arr, const Chamber &x,
                                             const std::optional<Chamber> &y) {
    const std::size_t n = arr.n(), d = arr.d();
    if (x.size() != n || (y && y->size() != n))
        throw Error(ErrorKind::InvalidInput, "chamber has wrong length");
    const Rational half(1, 2);
    const auto &tp = arr.embedding().tperp64();
    const IntVec &a0 = arr.basepoint();

    // interval for each coordinate
    std::vector<Rational> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = Rational(static_cast<long>(arr.p() * x[i])) - half;
        hi[i] = lo[i] + static_cast<long>(arr.p());
        if (y) {
            const Rational ylo = Rational(static_cast<long>(arr.p() * (*y)[i])) - half;
            lo[i] = std::max(lo[i], ylo);
            hi[i] = std::min(hi[i], Rational(ylo + static_cast<long>(arr.p())));
            if (lo[i] > hi[i])
                return std::nullopt;
        }
    }

    // rows in z: column i of tperp, against [lo_i - a0_i, hi_i - a0_i]
    std::vector<Row> ineq, eq;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> c(d);
        for (std::size_t r = 0; r < d; ++r)
            c[r] = static_cast<long>(tp[r][i]);
        const Rational ai(static_cast<long>(a0[i]));
        if (lo[i] == hi[i]) {
            eq.push_back({c, lo[i] - ai, {{i, lo[i]}}});
            continue;
        }
        ineq.push_back({c, hi[i] - ai, {{i, hi[i]}}});
        for (auto &v : c)
            v = -v;
        ineq.push_back({c, ai - lo[i], {{i, lo[i]}}});
    }

    auto all_rows = [&] {
        std::vector<Row> rows = ineq;
        for (const auto &e : eq) {
            rows.push_back(e);
            Row neg = e;
            for (auto &v : neg.coef)
                v = -v;
            neg.rhs = -neg.rhs;
            rows.push_back(neg);
        }
        return rows;
    };

    std::vector<Rational> z0(d);
    {
        auto rows = all_rows();
        LpResult feas = maximize(stack(rows, d), rhs_of(rows), std::vector<Rational>(d));
        if (feas.status == LpStatus::Infeasible)
            return std::nullopt;
        z0 = feas.point;
    }

    // implicit equalities: rows whose slack cannot be made positive
    std::vector<bool> implicit(ineq.size(), false);
    {
        auto rows = all_rows();
        const RatMatrix m = stack(rows, d);
        const auto b = rhs_of(rows);
        for (std::size_t r = 0; r < ineq.size(); ++r) {
            std::vector<Rational> obj(d);
            for (std::size_t c = 0; c < d; ++c)
                obj[c] = -ineq[r].coef[c];
            LpResult res = maximize(m, b, obj);
            if (res.status == LpStatus::Optimal && res.value + ineq[r].rhs == 0)
                implicit[r] = true;
        }
    }
    std::vector<Row> hull_rows = eq;
    for (std::size_t r = 0; r < ineq.size(); ++r)
        if (implicit[r])
            hull_rows.push_back(ineq[r]);

    RatMatrix null;
    if (hull_rows.empty()) {
        null = RatMatrix::identity(d);
    } else {
        null = right_nullspace(stack(hull_rows, d));
    }
    const std::size_t dim = null.cols();

    RationalPolytope poly;
    poly.x = x;
    poly.y = y;
    std::vector<Rational> a_origin(n);
    for (std::size_t i = 0; i < n; ++i) {
        a_origin[i] = static_cast<long>(a0[i]);
        for (std::size_t r = 0; r < d; ++r)
            a_origin[i] += static_cast<long>(tp[r][i]) * z0[r];
    }
    poly.origin = a_origin;
    poly.basis = RatMatrix(n, dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < dim; ++c)
            for (std::size_t r = 0; r < d; ++r)
                poly.basis(i, c) += static_cast<long>(tp[r][i]) * null(r, c);

    std::vector<Row> rows;
    for (std::size_t r = 0; r < ineq.size(); ++r) {
        if (implicit[r])
            continue;
        Row row;
        row.coef.assign(dim, Rational(0));
        bool zero = true;
        for (std::size_t c = 0; c < dim; ++c) {
            for (std::size_t s = 0; s < d; ++s)
                row.coef[c] += ineq[r].coef[s] * null(s, c);
            if (row.coef[c] != 0)
                zero = false;
        }
        if (zero)
            continue; // constant on the hull and not tight: never active
        row.rhs = ineq[r].rhs;
        for (std::size_t s = 0; s < d; ++s)
            row.rhs -= ineq[r].coef[s] * z0[s];
        row.labels = ineq[r].labels;
        normalize(row);
        auto same = std::find_if(rows.begin(), rows.end(), [&](const Row &o) {
            return o.coef == row.coef && o.rhs == row.rhs;
        });
        if (same != rows.end())
            same->labels.insert(same->labels.end(), row.labels.begin(), row.labels.end());
        else
            rows.push_back(std::move(row));
    }
    poly.lhs = stack(rows, dim);
    poly.rhs = rhs_of(rows);
    for (auto &r : rows)
        poly.labels.push_back(std::move(r.labels));
    return poly;
}

RationalPolytope polytope(const Arrangement &arr, const Chamber &x, const std::optional<Chamber> &y) {
    auto p = try_polytope(arr, x, y);
    if (!p)
        throw Error(ErrorKind::EmptyIntersection, "closed chambers do not meet");
    return std::move(*p);
}

VertexEdgeGraph vertices_and_edges(const RationalPolytope &poly) {
    VertexEdgeGraph g;
    const std::size_t dim = poly.dim(), m = poly.lhs.rows();
    g.dim = dim;

    auto tight_set = [&](const std::vector<Rational> &w) {
        std::vector<std::size_t> t;
        for (std::size_t r = 0; r < m; ++r) {
            Rational v = 0;
            for (std::size_t c = 0; c < dim; ++c)
                v += poly.lhs(r, c) * w[c];
            if (v > poly.rhs[r])
                return std::optional<std::vector<std::size_t>>{};
            if (v == poly.rhs[r])
                t.push_back(r);
        }
        return std::optional<std::vector<std::size_t>>{t};
    };

    std::map<std::vector<Rational>, std::size_t> seen;
    for (const auto &subset : subsets(m, dim)) {
        RatMatrix sys(dim, dim);
        std::vector<Rational> b(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c)
                sys(r, c) = poly.lhs(subset[r], c);
            b[r] = poly.rhs[subset[r]];
        }
        if (rank(sys) != dim)
            continue;
        auto w = solve(sys, b);
        if (!w)
            continue;
        if (seen.count(*w))
            continue;
        auto t = tight_set(*w);
        if (!t)
            continue;
        seen.emplace(*w, g.vertices.size());
        if (t->size() > dim)
            g.simple = false;
        g.vertices.push_back({*w, poly.to_weight(*w), std::move(*t)});
    }
    std::sort(g.vertices.begin(), g.vertices.end(),
              [](const Vertex &a, const Vertex &b) { return a.a < b.a; });

    if (dim == 0)
        return g;
    for (std::size_t u = 0; u < g.vertices.size(); ++u)
        for (std::size_t v = u + 1; v < g.vertices.size(); ++v) {
            const auto &tu = g.vertices[u].tight, &tv = g.vertices[v].tight;
            std::vector<std::size_t> common;
            std::set_intersection(tu.begin(), tu.end(), tv.begin(), tv.end(),
                                  std::back_inserter(common));
            if (common.size() + 1 < dim)
                continue;
            if (!g.simple) {
                // shared rows must cut out a line
                RatMatrix sub(common.size(), dim);
                for (std::size_t r = 0; r < common.size(); ++r)
                    for (std::size_t c = 0; c < dim; ++c)
                        sub(r, c) = poly.lhs(common[r], c);
                if (rank(sub) + 1 != dim)
                    continue;
            }
            g.edges.emplace_back(u, v);
        }
    return g;
}

HVector h_vector(const VertexEdgeGraph &g, std::span<const Rational> xi) {
    if (!g.simple)
        throw Error(ErrorKind::NotSimple, "vertex with more tight constraints than the dimension");
    if (xi.size() != g.dim)
        throw Error(ErrorKind::InvalidInput, "functional has wrong length");
    auto value = [&](const Vertex &v) {
        Rational s = 0;
        for (std::size_t c = 0; c < g.dim; ++c)
            s += xi[c] * v.w[c];
        return s;
    };
    std::vector<Rational> val;
    for (const auto &v : g.vertices)
        val.push_back(value(v));
    std::vector<std::int64_t> down(g.vertices.size(), 0);
    for (auto [u, v] : g.edges) {
        if (val[u] == val[v])
            throw Error(ErrorKind::DegenerateFunctional, "functional is constant on an edge");
        ++down[val[u] > val[v] ? u : v];
    }
    HVector h(g.dim + 1, 0);
    for (auto c : down) {
        if (c > static_cast<std::int64_t>(g.dim))
            throw Error(ErrorKind::NotSimple, "vertex of too high degree");
        ++h[c];
    }
    return h;
}

HVector h_vector(const VertexEdgeGraph &g, SeededRng &rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Rational> xi(g.dim);
        for (auto &c : xi)
            c = rng.dyadic(-(1 << 16), 1 << 16, 10);
        try {
            return h_vector(g, xi);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::DegenerateFunctional)
                throw;
        }
    }
    throw Error(ErrorKind::DegenerateFunctional, "no generic functional in 64 samples");
}

namespace {

Integer binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace

HVector sr_dims(const VertexEdgeGraph &g) {
    if (!g.simple)
        throw Error(ErrorKind::NotSimple, "vertex with more tight constraints than the dimension");
    const std::int64_t dim = static_cast<std::int64_t>(g.dim);
    // faces of the dual simplicial complex: subsets of some vertex's tight set
    std::vector<std::set<std::vector<std::size_t>>> faces(g.dim + 1);
    for (const auto &v : g.vertices)
        for (std::size_t j = 0; j <= g.dim; ++j)
            for (const auto &idx : subsets(v.tight.size(), j)) {
                std::vector<std::size_t> f;
                for (auto i : idx)
                    f.push_back(v.tight[i]);
                faces[j].insert(std::move(f));
            }
    HVector h(g.dim + 1, 0);
    for (std::int64_t i = 0; i <= dim; ++i) {
        Integer s = 0;
        for (std::int64_t j = 0; j <= i; ++j) {
            const Integer term = binomial(dim - j, dim - i) * static_cast<long>(faces[j].size());
            s += ((i - j) % 2 == 0) ? term : Integer(-term);
        }
        h[i] = to_int64(s);
    }
    return h;
}

bool is_palindromic(const HVector &h) {
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] != h[h.size() - 1 - i])
            return false;
    return true;
}

CoreComplex core_complex(const Arrangement &arr, const ChamberEnumeration &en) {
    CoreComplex cc;
    cc.codim_profile.assign(arr.d() + 1, 0);
    const auto &emb = arr.embedding();
    for (std::size_t a = 0; a < en.size(); ++a) {
        const Chamber &x = en.classes()[a].key;
        for (std::size_t b = 0; b < en.size(); ++b)
            for (const auto &y : en.touching_lifts(emb, x, b)) {
                auto poly = try_polytope(arr, x, y);
                if (!poly)
                    continue;
                const std::size_t dim = poly->dim();
                cc.pieces.push_back({a, b, y, dim});
                ++cc.codim_profile[arr.d() - dim];
                if (static_cast<std::int64_t>(arr.d() - dim) != l1_norm(difference(x, y)))
                    ++cc.expected_codim_violations;
            }
    }
    return cc;
}

} // namespace htk
