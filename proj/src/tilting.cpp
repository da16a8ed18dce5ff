#include "htk/tilting.hpp"

#include "htk/hilbert.hpp"

#include <map>

namespace htk {

TiltingSummands tilting_summands(const ChamberEnumeration &en, bool smooth) {
    TiltingSummands t;
    for (const auto &c : en.classes())
        t.labels.push_back(c.key);
    t.generator = smooth;
    return t;
}

std::int64_t Monomial::degree() const { return l1_norm(z) + l1_norm(w); }

Monomial Monomial::operator*(const Monomial &o) const {
    Monomial m = *this;
    for (std::size_t i = 0; i < m.z.size(); ++i) {
        m.z[i] += o.z[i];
        m.w[i] += o.w[i];
    }
    return m;
}

std::string Monomial::str() const {
    std::string s;
    auto put = [&](char var, std::size_t i, std::int64_t e) {
        if (e == 0)
            return;
        if (!s.empty())
            s += '*';
        s += var + std::to_string(i + 1);
        if (e > 1)
            s += '^' + std::to_string(e);
    };
    for (std::size_t i = 0; i < z.size(); ++i) {
        put('z', i, z[i]);
        put('w', i, w[i]);
    }
    return s.empty() ? "1" : s;
}

Monomial section(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
    Monomial m{IntVec(x.size(), 0), IntVec(x.size(), 0)};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::int64_t v = y[i] - x[i];
        (v > 0 ? m.z[i] : m.w[i]) = std::abs(v);
    }
    return m;
}

Monomial zw_power(std::span<const std::int64_t> e) {
    return {IntVec(e.begin(), e.end()), IntVec(e.begin(), e.end())};
}

EndIsoReport verify_end_iso(const QuadraticPresentation &h) {
    if (h.side != Side::H)
        throw Error(ErrorKind::InvalidInput, "end-iso check applies to H");
    EndIsoReport rep;
    const std::size_t n = h.vertices.empty() ? 0 : h.vertices.front().size();
    for (std::size_t r = 0; r < h.relations.size(); ++r) {
        const Relation &rel = h.relations[r];
        if (rel.kind == RelationKind::BaseLinear) {
            ++rep.skipped;
            continue;
        }
        ++rep.checked;
        std::map<Monomial, Rational> total;
        for (const Term &t : rel.terms) {
            Monomial m{IntVec(n, 0), IntVec(n, 0)};
            if (t.base) {
                m.z[*t.base] = m.w[*t.base] = 1;
            } else {
                const IntVec zero(n, 0);
                for (auto a : t.path)
                    m = m * section(zero, h.step(a));
            }
            total[m] += t.coef;
        }
        for (const auto &[m, c] : total)
            if (c != 0) {
                rep.mismatches.push_back(r);
                break;
            }
    }
    return rep;
}

bool eta_shadow_holds(const Chamber &x, const Chamber &y, const Chamber &u) {
    return section(x, y) * section(y, u) == zw_power(eta(x, y, u)) * section(x, u);
}

bool reverse_shadow_holds(const Chamber &x, const Chamber &y) {
    IntVec delta(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        delta[i] = std::abs(x[i] - y[i]);
    return section(x, y) * section(y, x) == zw_power(delta);
}

std::vector<DegreeRow> degree_table(const Arrangement &arr, const ChamberEnumeration &en, std::int64_t radius) {
    std::vector<DegreeRow> rows;
    const auto &emb = arr.embedding();
    for (std::size_t x = 0; x < en.size(); ++x) {
        const Chamber &rep = en.classes()[x].key;
        // shortest arrow paths in the periodic quiver, out to the radius
        std::map<Chamber, std::int64_t> depth{{rep, 0}};
        std::vector<std::pair<Chamber, std::size_t>> frontier{{rep, x}};
        for (std::int64_t r = 1; r <= radius; ++r) {
            std::vector<std::pair<Chamber, std::size_t>> next;
            for (const auto &[c, cls] : frontier)
                for (const auto &e : en.edges()) {
                    if (e.from != cls)
                        continue;
                    Chamber u = c;
                    u[e.coordinate] += e.sign;
                    if (depth.emplace(u, r).second)
                        next.emplace_back(std::move(u), e.to);
                }
            frontier = std::move(next);
        }
        for (std::size_t y = 0; y < en.size(); ++y)
            for (const auto &lift : en.lifts_within(emb, rep, y, radius)) {
                auto it = depth.find(lift);
                rows.push_back({x, y, lift, section(rep, lift).degree(), it == depth.end() ? -1 : it->second});
            }
    }
    return rows;
}

std::vector<std::int64_t> section_count_dims(const Arrangement &arr, const ChamberEnumeration &en,
                                             std::size_t x, std::size_t y, std::size_t truncation) {
    const auto n = static_cast<std::int64_t>(arr.n());
    const Chamber &rep = en.classes().at(x).key;
    std::vector<Integer> raw(truncation + 1, 0);
    for (const auto &lift : en.lifts_within(arr.embedding(), rep, y, static_cast<std::int64_t>(truncation))) {
        // z^a w^b with a - b = lift - rep: a common factor prod (z_i w_i)^{c_i}
        const std::int64_t base = section(rep, lift).degree();
        for (std::int64_t q = base; q <= static_cast<std::int64_t>(truncation); q += 2)
            raw[q] += monomial_count(n, (q - base) / 2);
    }
    // restrict to the zero fibre of the moment map: k quadrics in z_i w_i
    for (std::size_t j = 0; j < arr.embedding().k(); ++j)
        for (std::size_t q = truncation; q >= 2; --q)
            raw[q] -= raw[q - 2];
    std::vector<std::int64_t> out;
    for (const auto &v : raw)
        out.push_back(to_int64(v));
    return out;
}

} // namespace htk
