#include "htk/hilbert.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace htk {

HilbertMatrix::HilbertMatrix(std::size_t classes, std::size_t trunc)
    : truncation(trunc),
      entries(classes, std::vector<std::vector<std::int64_t>>(classes, std::vector<std::int64_t>(trunc + 1, 0))) {}

Integer monomial_count(std::int64_t r, std::int64_t j) {
    if (j < 0)
        return 0;
    if (r == 0)
        return j == 0 ? 1 : 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(j + r - 1), static_cast<unsigned long>(r - 1));
    return out;
}

std::vector<std::int64_t> hom_dims_H(const Arrangement &arr, const ChamberEnumeration &en, std::size_t x,
                                     std::size_t y, std::size_t truncation) {
    std::vector<std::int64_t> dims(truncation + 1, 0);
    const Chamber &rep = en.classes().at(x).key;
    const auto d = static_cast<std::int64_t>(arr.d());
    for (const auto &lift : en.lifts_within(arr.embedding(), rep, y, static_cast<std::int64_t>(truncation))) {
        const std::int64_t dist = l1_norm(difference(rep, lift));
        for (std::int64_t q = dist; q <= static_cast<std::int64_t>(truncation); q += 2)
            dims[q] += to_int64(monomial_count(d, (q - dist) / 2));
    }
    return dims;
}

HilbertMatrix hom_dims_H(const Arrangement &arr, const ChamberEnumeration &en, std::size_t truncation) {
    HilbertMatrix m(en.size(), truncation);
    for (std::size_t x = 0; x < en.size(); ++x)
        for (std::size_t y = 0; y < en.size(); ++y)
            m.entries[x][y] = hom_dims_H(arr, en, x, y, truncation);
    return m;
}

std::vector<std::int64_t> ext_dims_from_toric(const Arrangement &arr, const ChamberEnumeration &en,
                                              std::size_t x, std::size_t y, std::size_t truncation) {
    std::vector<std::int64_t> dims(truncation + 1, 0);
    const Chamber &rep = en.classes().at(x).key;
    SeededRng rng(0x70a1c + 31 * x + y);
    for (const auto &lift : en.touching_lifts(arr.embedding(), rep, y)) {
        auto poly = try_polytope(arr, rep, lift);
        if (!poly)
            continue;
        const auto h = h_vector(vertices_and_edges(*poly), rng);
        const std::size_t shift = static_cast<std::size_t>(l1_norm(difference(rep, lift)));
        for (std::size_t i = 0; i < h.size(); ++i)
            if (shift + 2 * i <= truncation)
                dims[shift + 2 * i] += h[i];
    }
    return dims;
}

HilbertMatrix ext_dims_from_toric(const Arrangement &arr, const ChamberEnumeration &en, std::size_t truncation) {
    HilbertMatrix m(en.size(), truncation);
    for (std::size_t x = 0; x < en.size(); ++x)
        for (std::size_t y = 0; y < en.size(); ++y)
            m.entries[x][y] = ext_dims_from_toric(arr, en, x, y, truncation);
    return m;
}

std::size_t max_oracle_cells() {
    if (const char *env = std::getenv("HTK_MAX_CELLS")) {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 2'000'000;
}

namespace {

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

// Incremental fully reduced row echelon form; the pivot of each row is its
// largest column, so earlier generators survive as quotient basis elements.
class Echelon {
public:
    explicit Echelon(std::size_t cols) : pivot_row_(cols, npos) {}

    void insert(const SparseVec &in) {
        std::vector<Rational> v(pivot_row_.size());
        bool any = false;
        for (const auto &[c, a] : in) {
            v[c] += a;
            any = true;
        }
        if (!any)
            return;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const std::size_t pc = pivots_[r];
            if (v[pc] == 0)
                continue;
            const Rational f = v[pc];
            for (const auto &[c, a] : rows_[r])
                v[c] -= f * a;
        }
        std::size_t pc = npos;
        for (std::size_t c = v.size(); c-- > 0;)
            if (v[c] != 0) {
                pc = c;
                break;
            }
        if (pc == npos)
            return;
        const Rational inv = 1 / v[pc];
        SparseVec row;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c] != 0)
                row.emplace_back(c, v[c] * inv);
        for (auto &other : rows_) {
            auto it = std::find_if(other.begin(), other.end(), [&](const auto &e) { return e.first == pc; });
            if (it == other.end())
                continue;
            const Rational f = it->second;
            std::vector<Rational> dense(v.size());
            for (const auto &[c, a] : other)
                dense[c] = a;
            for (const auto &[c, a] : row)
                dense[c] -= f * a;
            other.clear();
            for (std::size_t c = 0; c < dense.size(); ++c)
                if (dense[c] != 0)
                    other.emplace_back(c, dense[c]);
        }
        pivot_row_[pc] = rows_.size();
        pivots_.push_back(pc);
        rows_.push_back(std::move(row));
    }

    std::size_t rank() const { return rows_.size(); }

    // Coordinates of every generator in the quotient basis (non-pivot columns).
    std::vector<SparseVec> projections() const {
        const std::size_t cols = pivot_row_.size();
        std::vector<std::size_t> basis_index(cols, npos);
        std::size_t next = 0;
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_row_[c] == npos)
                basis_index[c] = next++;
        std::vector<SparseVec> out(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_row_[c] == npos) {
                out[c] = {{basis_index[c], Rational(1)}};
                continue;
            }
            for (const auto &[j, a] : rows_[pivot_row_[c]])
                if (j != c)
                    out[c].emplace_back(basis_index[j], -a);
        }
        return out;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_row_;
    std::vector<std::size_t> pivots_;
    std::vector<SparseVec> rows_;
};

struct Block {
    std::size_t cls = 0;
    std::size_t dim = 0;
    // ext[beta][arrow]: basis element beta followed by arrow, in the next degree's basis
    std::vector<std::map<std::size_t, SparseVec>> ext;
};

IntVec add(IntVec a, const IntVec &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

} // namespace

HilbertMatrix truncated_dims_oracle(const Arrangement &arr, const ChamberEnumeration &en,
                                    const QuadraticPresentation &pres, std::size_t truncation) {
    const std::size_t n = arr.n(), limit = max_oracle_cells();
    HilbertMatrix out(en.size(), truncation);
    std::size_t cells = 0;

    // groups by source class
    std::vector<std::vector<std::size_t>> groups_from(en.size());
    for (std::size_t g = 0; g < pres.groups.size(); ++g)
        groups_from[pres.groups[g].source].push_back(g);

    for (std::size_t x = 0; x < en.size(); ++x) {
        std::map<IntVec, Block> older, prev;
        prev[IntVec(n, 0)] = Block{x, 1, {}};
        out.entries[x][x][0] = 1;

        for (std::size_t q = 1; q <= truncation; ++q) {
            using GenKey = std::tuple<IntVec, std::size_t, std::size_t>; // (D', beta, arrow)
            std::map<IntVec, std::map<GenKey, std::size_t>> gens;
            std::map<IntVec, std::size_t> cls_of;
            for (auto &[dp, blk] : prev)
                for (std::size_t beta = 0; beta < blk.dim; ++beta)
                    for (auto a : pres.out_arrows[blk.cls]) {
                        IntVec dn = add(dp, pres.step(a));
                        auto &m = gens[dn];
                        m.emplace(GenKey{dp, beta, a}, m.size());
                        cls_of[dn] = pres.arrows[a].target;
                        if (++cells > limit)
                            throw Error(ErrorKind::TruncationTooLarge,
                                        "oracle exceeded " + std::to_string(limit) + " cells at degree " +
                                            std::to_string(q));
                    }

            std::map<IntVec, Echelon> ech;
            for (auto &[dn, m] : gens)
                ech.emplace(dn, Echelon(m.size()));

            if (q >= 2) {
                for (auto &[dpp, blk] : older)
                    for (auto gi : groups_from[blk.cls]) {
                        const auto &g = pres.groups[gi];
                        const IntVec dn = add(dpp, g.displacement);
                        auto git = gens.find(dn);
                        if (git == gens.end())
                            continue;
                        for (std::size_t beta = 0; beta < blk.dim; ++beta)
                            for (const auto &row : g.relations) {
                                std::map<std::size_t, Rational> acc;
                                for (std::size_t k = 0; k < g.paths.size(); ++k) {
                                    if (row[k] == 0)
                                        continue;
                                    const auto [a1, a2] = g.paths[k];
                                    const IntVec mid = add(dpp, pres.step(a1));
                                    for (const auto &[b1, coef] : blk.ext[beta].at(a1))
                                        acc[git->second.at(GenKey{mid, b1, a2})] += row[k] * coef;
                                }
                                SparseVec v;
                                for (auto &[c, a] : acc)
                                    if (a != 0)
                                        v.emplace_back(c, a);
                                ech.at(dn).insert(v);
                            }
                    }
            }

            std::map<IntVec, Block> next;
            for (auto &[dn, m] : gens) {
                const Echelon &e = ech.at(dn);
                Block blk{cls_of.at(dn), m.size() - e.rank(), {}};
                if (blk.dim > 0)
                    out.entries[x][blk.cls][q] += static_cast<std::int64_t>(blk.dim);
                const auto proj = e.projections();
                for (const auto &[key, idx] : m) {
                    const auto &[dp, beta, a] = key;
                    auto &pb = prev.at(dp);
                    if (pb.ext.empty())
                        pb.ext.resize(pb.dim);
                    pb.ext[beta][a] = proj[idx];
                }
                next.emplace(dn, std::move(blk));
            }
            older = std::move(prev);
            prev = std::move(next);
        }
    }
    return out;
}

KoszulityReport koszulity_check(const HilbertMatrix &h, const HilbertMatrix &dual, std::size_t truncation) {
    if (h.size() != dual.size())
        throw Error(ErrorKind::InvalidInput, "Hilbert matrices on different index sets");
    if (h.truncation < truncation || dual.truncation < truncation)
        throw Error(ErrorKind::InvalidInput, "Hilbert matrices truncated below the requested degree");
    KoszulityReport rep;
    rep.truncation = truncation;
    const std::size_t m = h.size();
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            for (std::size_t q = 0; q <= truncation; ++q) {
                std::int64_t s = 0;
                for (std::size_t z = 0; z < m; ++z)
                    for (std::size_t j = 0; j <= q; ++j) {
                        const std::int64_t term = dual.entries[x][z][j] * h.entries[z][y][q - j];
                        s += (j % 2 == 0) ? term : -term;
                    }
                const std::int64_t expect = (x == y && q == 0) ? 1 : 0;
                if (s != expect)
                    rep.failures.push_back({x, y, q, s});
            }
    return rep;
}

} // namespace htk
