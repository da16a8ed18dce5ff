#include "htk/quiver.hpp"

#include "htk/normal_form.hpp"

#include <algorithm>

namespace htk {

const char *to_string(RelationKind kind) {
    switch (kind) {
    case RelationKind::WallCross: return "wall-cross";
    case RelationKind::Codim1: return "codim1";
    case RelationKind::Codim2: return "codim2";
    case RelationKind::BaseLinear: return "base-linear";
    case RelationKind::WallCrossBang: return "wall-cross!";
    case RelationKind::Codim1Bang: return "codim1!";
    case RelationKind::Codim2Bang: return "codim2!";
    case RelationKind::DoubleStep: return "doublestep";
    }
    return "unknown";
}

IntVec QuadraticPresentation::step(std::size_t arrow) const {
    IntVec s(vertices.empty() ? 0 : vertices.front().size(), 0);
    s[arrows[arrow].coordinate] = arrows[arrow].sign;
    return s;
}

std::string QuadraticPresentation::arrow_name(std::size_t arrow) const {
    const Arrow &a = arrows[arrow];
    return std::string(side == Side::H ? "c" : "d") + std::to_string(a.source) +
           (a.sign > 0 ? "+" : "-") + std::to_string(a.coordinate + 1);
}

namespace {

IntVec add(IntVec a, const IntVec &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

// Path-space part of the span of `rows` (columns: base symbols first, then paths).
std::vector<std::vector<Rational>> eliminate_base(std::vector<std::vector<Rational>> rows,
                                                  std::size_t base_cols, std::size_t path_cols) {
    std::vector<std::vector<Rational>> out;
    if (rows.empty())
        return out;
    RatMatrix m(rows.size(), base_cols + path_cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < base_cols + path_cols; ++c)
            m(r, c) = rows[r][c];
    const auto pivots = rref(m);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] < base_cols)
            continue;
        std::vector<Rational> row(path_cols);
        for (std::size_t c = 0; c < path_cols; ++c)
            row[c] = m(r, base_cols + c);
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::vector<Rational>> rref_rows(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    return eliminate_base(std::move(rows), 0, cols);
}

QuadraticPresentation build(const Arrangement &arr, const ChamberEnumeration &en, Side side, bool smooth) {
    const auto &emb = arr.embedding();
    const std::size_t n = arr.n();
    QuadraticPresentation pres;
    pres.side = side;
    pres.smooth = smooth;
    for (const auto &c : en.classes())
        pres.vertices.push_back(c.key);
    pres.out_arrows.resize(en.size());
    for (const auto &e : en.edges()) {
        pres.out_arrows[e.from].push_back(pres.arrows.size());
        pres.arrows.push_back({e.from, e.to, e.coordinate, e.sign});
    }

    // linear relations among base symbols: columns of rho for H, rows of tperp for H^!
    std::vector<std::vector<Rational>> base_rows;
    if (side == Side::H) {
        for (std::size_t j = 0; j < emb.k(); ++j) {
            std::vector<Rational> r(n);
            for (std::size_t i = 0; i < n; ++i)
                r[i] = static_cast<long>(emb.rho64()[j][i]);
            base_rows.push_back(r);
        }
    } else {
        for (const auto &t : emb.tperp64()) {
            std::vector<Rational> r(n);
            for (std::size_t i = 0; i < n; ++i)
                r[i] = static_cast<long>(t[i]);
            base_rows.push_back(r);
        }
    }
    for (const auto &r : base_rows) {
        Relation rel{RelationKind::BaseLinear, std::nullopt, {}, {}};
        for (std::size_t i = 0; i < n; ++i)
            if (r[i] != 0)
                rel.terms.push_back({r[i], {}, i});
        pres.relations.push_back(std::move(rel));
    }

    for (std::size_t x = 0; x < en.size(); ++x) {
        // length-2 paths from x, grouped by lifted endpoint
        std::map<IntVec, std::vector<std::array<std::size_t, 2>>> by_disp;
        for (auto a1 : pres.out_arrows[x])
            for (auto a2 : pres.out_arrows[pres.arrows[a1].target])
                by_disp[add(pres.step(a1), pres.step(a2))].push_back({a1, a2});

        for (auto &[disp, paths] : by_disp) {
            std::sort(paths.begin(), paths.end());
            RelationGroup g;
            g.source = x;
            g.target = pres.arrows[paths.front()[1]].target;
            g.displacement = disp;
            g.paths = paths;
            auto col = [&](const std::array<std::size_t, 2> &p) {
                return static_cast<std::size_t>(std::find(paths.begin(), paths.end(), p) - paths.begin());
            };
            auto path_term = [](Rational c, const std::array<std::size_t, 2> &p) {
                return Term{c, {p[0], p[1]}, std::nullopt};
            };

            const bool loop = std::all_of(disp.begin(), disp.end(), [](auto v) { return v == 0; });
            if (loop) {
                // rows over [base symbols | paths]
                std::vector<std::vector<Rational>> rows;
                if (side == Side::H) {
                    for (const auto &p : paths) {
                        const std::size_t i = pres.arrows[p[0]].coordinate;
                        pres.relations.push_back({RelationKind::WallCross, x, disp,
                                                  {path_term(1, p), Term{-1, {}, i}}});
                        std::vector<Rational> r(n + paths.size());
                        r[i] = -1;
                        r[n + col(p)] = 1;
                        rows.push_back(std::move(r));
                    }
                } else {
                    for (std::size_t i = 0; i < n; ++i) {
                        Relation rel{RelationKind::WallCrossBang, x, disp, {}};
                        std::vector<Rational> r(n + paths.size());
                        for (const auto &p : paths)
                            if (pres.arrows[p[0]].coordinate == i) {
                                rel.terms.push_back(path_term(1, p));
                                r[n + col(p)] = 1;
                            }
                        rel.terms.push_back(Term{-1, {}, i});
                        r[i] = -1;
                        pres.relations.push_back(std::move(rel));
                        rows.push_back(std::move(r));
                    }
                }
                for (const auto &b : base_rows) {
                    std::vector<Rational> r(n + paths.size());
                    std::copy(b.begin(), b.end(), r.begin());
                    rows.push_back(std::move(r));
                }
                g.relations = eliminate_base(std::move(rows), n, paths.size());
            } else if (paths.size() == 2) {
                const auto &p = paths[0], &q = paths[1];
                const bool same_sign = pres.arrows[p[0]].sign == pres.arrows[p[1]].sign;
                std::vector<Rational> r(2);
                r[0] = 1;
                if (side == Side::H) {
                    pres.relations.push_back({same_sign ? RelationKind::Codim1 : RelationKind::Codim2, x,
                                              disp, {path_term(1, p), path_term(-1, q)}});
                    r[1] = -1;
                } else {
                    pres.relations.push_back({same_sign ? RelationKind::Codim1Bang : RelationKind::Codim2Bang,
                                              x, disp, {path_term(1, p), path_term(1, q)}});
                    r[1] = 1;
                }
                g.relations = rref_rows({r}, 2);
            } else if (paths.size() == 1) {
                if (side == Side::HDual) {
                    pres.relations.push_back({RelationKind::DoubleStep, x, disp, {path_term(1, paths[0])}});
                    g.relations = {{Rational(1)}};
                }
            } else {
                throw Error(ErrorKind::InvalidInput, "more than two length-2 paths to one lifted chamber");
            }
            pres.group_index.emplace(std::make_pair(x, disp), pres.groups.size());
            pres.groups.push_back(std::move(g));
        }

        // t_i e_x = 0 for families with no loops at x (nothing to eliminate into)
        if (side == Side::HDual && !by_disp.count(IntVec(n, 0)))
            for (std::size_t i = 0; i < n; ++i)
                pres.relations.push_back({RelationKind::WallCrossBang, x, IntVec(n, 0), {Term{-1, {}, i}}});
    }
    return pres;
}

} // namespace

QuadraticPresentation build_H(const Arrangement &arr, const ChamberEnumeration &en, bool smooth) {
    return build(arr, en, Side::H, smooth);
}

QuadraticPresentation build_H_dual(const Arrangement &arr, const ChamberEnumeration &en, bool smooth) {
    return build(arr, en, Side::HDual, smooth);
}

bool DualityReport::pass() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const DualityEntry &e) { return e.ok(); });
}

DualityReport quadratic_duality_check(const QuadraticPresentation &h, const QuadraticPresentation &dual) {
    if (h.arrows.size() != dual.arrows.size() || h.groups.size() != dual.groups.size())
        throw Error(ErrorKind::InvalidInput, "presentations are not on the same quiver");
    std::map<std::pair<std::size_t, std::size_t>, DualityEntry> acc;
    for (std::size_t gi = 0; gi < h.groups.size(); ++gi) {
        const auto &g = h.groups[gi];
        const auto &gd = dual.groups[gi];
        if (g.paths != gd.paths)
            throw Error(ErrorKind::InvalidInput, "presentations disagree on path groups");
        auto &e = acc[{g.source, g.target}];
        e.source = g.source;
        e.target = g.target;
        e.paths += g.paths.size();
        e.dim_h += g.relations.size();
        e.dim_dual += gd.relations.size();
        for (const auto &r : g.relations)
            for (const auto &s : gd.relations) {
                Rational dot = 0;
                for (std::size_t c = 0; c < r.size(); ++c)
                    dot += r[c] * s[c];
                if (dot != 0)
                    e.orthogonal = false;
            }
    }
    DualityReport rep;
    for (auto &[key, e] : acc)
        rep.pairs.push_back(e);
    return rep;
}

} // namespace htk
