#include "htk/arrangement.hpp"

#include "htk/lp.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace htk {

bool Parameter::p_is_prime() const {
    if (p < 2)
        return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

Arrangement::Arrangement(TorusEmbedding emb, Parameter param)
    : emb_(std::move(emb)), param_(std::move(param)) {
    if (param_.p < 2)
        throw Error(ErrorKind::InvalidInput, "period p must be at least 2");
    a0_ = emb_.coset_basepoint(param_.lambda);
}

bool Arrangement::in_coset(std::span<const std::int64_t> a) const {
    return a.size() == n() && emb_.restrict_to_t(a) == param_.lambda;
}

Chamber Arrangement::weight_to_chamber(std::span<const std::int64_t> a) const {
    if (!in_coset(a))
        throw Error(ErrorKind::NotInCoset, "weight does not restrict to lambda");
    Chamber x(n());
    for (std::size_t i = 0; i < n(); ++i)
        x[i] = floor_div(a[i], p());
    return x;
}

IntVec Arrangement::delta(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const {
    const Chamber x = weight_to_chamber(a), y = weight_to_chamber(b);
    IntVec out(n());
    for (std::size_t i = 0; i < n(); ++i)
        out[i] = std::abs(y[i] - x[i]);
    return out;
}

IntVec eta(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
           std::span<const std::int64_t> u) {
    IntVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = (std::abs(x[i] - y[i]) + std::abs(y[i] - u[i]) - std::abs(x[i] - u[i])) / 2;
    return out;
}

namespace {

// Box constraints lo_i <= a0_i + sum_r T[r][i] z_r <= hi_i in the free
// coordinates z_start.., with z_0..z_{start-1} already fixed.
struct BoxSystem {
    const std::vector<IntVec> &tperp;
    const IntVec &a0;
    std::vector<Rational> lo, hi;

    // Rows in the remaining variables; returns false if a constant row fails.
    bool rows(std::size_t start, std::span<const Rational> fixed, RatMatrix &lhs,
              std::vector<Rational> &rhs) const {
        const std::size_t n = a0.size(), d = tperp.size(), m = d - start;
        std::vector<std::vector<Rational>> coef;
        std::vector<Rational> b;
        for (std::size_t i = 0; i < n; ++i) {
            Rational offset = static_cast<long>(a0[i]);
            for (std::size_t r = 0; r < start; ++r)
                offset += static_cast<long>(tperp[r][i]) * fixed[r];
            std::vector<Rational> c(m);
            bool zero = true;
            for (std::size_t r = start; r < d; ++r) {
                c[r - start] = static_cast<long>(tperp[r][i]);
                if (tperp[r][i] != 0)
                    zero = false;
            }
            if (zero) {
                if (offset < lo[i] || offset > hi[i])
                    return false;
                continue;
            }
            coef.push_back(c);
            b.push_back(hi[i] - offset);
            for (auto &v : c)
                v = -v;
            coef.push_back(c);
            b.push_back(offset - lo[i]);
        }
        lhs = RatMatrix(coef.size(), m);
        for (std::size_t r = 0; r < coef.size(); ++r)
            for (std::size_t c = 0; c < m; ++c)
                lhs(r, c) = coef[r][c];
        rhs = std::move(b);
        return true;
    }
};

bool search_integer(const BoxSystem &sys, std::vector<Rational> &z, std::size_t level) {
    const std::size_t d = sys.tperp.size();
    RatMatrix lhs;
    std::vector<Rational> rhs;
    if (!sys.rows(level, z, lhs, rhs))
        return false;
    if (level == d)
        return true;
    const std::size_t m = d - level;
    Integer lo_z, hi_z;
    if (m == 1) {
        // direct interval from each row a * z <= b
        Rational lo, hi;
        bool has_lo = false, has_hi = false;
        for (std::size_t r = 0; r < lhs.rows(); ++r) {
            const Rational bound = rhs[r] / lhs(r, 0);
            if (lhs(r, 0) > 0) {
                if (!has_hi || bound < hi)
                    hi = bound;
                has_hi = true;
            } else {
                if (!has_lo || bound > lo)
                    lo = bound;
                has_lo = true;
            }
        }
        if (!has_lo || !has_hi)
            throw Error(ErrorKind::InvalidInput, "unbounded chamber box");
        lo_z = ceil_of(lo);
        hi_z = floor_of(hi);
    } else {
        std::vector<Rational> obj(m, Rational(0));
        obj[0] = 1;
        LpResult up = maximize(lhs, rhs, obj);
        if (up.status == LpStatus::Infeasible)
            return false;
        obj[0] = -1;
        LpResult down = maximize(lhs, rhs, obj);
        if (up.status != LpStatus::Optimal || down.status != LpStatus::Optimal)
            throw Error(ErrorKind::InvalidInput, "unbounded chamber box");
        lo_z = ceil_of(-down.value);
        hi_z = floor_of(up.value);
    }
    for (Integer v = lo_z; v <= hi_z; ++v) {
        z[level] = v;
        if (search_integer(sys, z, level + 1))
            return true;
    }
    return false;
}

} // namespace

std::optional<IntVec> Arrangement::integral_witness(const Chamber &x) const {
    if (x.size() != n())
        throw Error(ErrorKind::InvalidInput, "chamber has wrong length");
    BoxSystem sys{emb_.tperp64(), a0_, std::vector<Rational>(n()), std::vector<Rational>(n())};
    for (std::size_t i = 0; i < n(); ++i) {
        sys.lo[i] = static_cast<long>(p() * x[i]);
        sys.hi[i] = static_cast<long>(p() * x[i] + p() - 1);
    }
    std::vector<Rational> z(d());
    if (!search_integer(sys, z, 0))
        return std::nullopt;
    auto a = emb_.coset_point(a0_, z);
    IntVec out(n());
    for (std::size_t i = 0; i < n(); ++i)
        out[i] = to_int64(a[i].get_num());
    return out;
}

bool Arrangement::is_nonempty_real(const Chamber &x, std::span<const Rational> eps) const {
    if (eps.size() != n())
        throw Error(ErrorKind::InvalidInput, "perturbation has wrong length");
    for (const auto &e : eps)
        if (e <= 0 || e >= 1)
            throw Error(ErrorKind::InvalidInput, "perturbation entries must lie in (0, 1)");
    // maximize the margin t subject to px_i - eps_i + t <= a_i <= px_i + p - eps_i - t
    const std::size_t dd = d();
    const auto &tp = emb_.tperp64();
    RatMatrix lhs(2 * n() + 1, dd + 1);
    std::vector<Rational> rhs(2 * n() + 1);
    for (std::size_t i = 0; i < n(); ++i) {
        for (std::size_t r = 0; r < dd; ++r) {
            lhs(2 * i, r) = static_cast<long>(tp[r][i]);
            lhs(2 * i + 1, r) = static_cast<long>(-tp[r][i]);
        }
        lhs(2 * i, dd) = 1;
        lhs(2 * i + 1, dd) = 1;
        rhs[2 * i] = Rational(static_cast<long>(p() * x[i] + p() - a0_[i])) - eps[i];
        rhs[2 * i + 1] = Rational(static_cast<long>(a0_[i] - p() * x[i])) + eps[i];
    }
    lhs(2 * n(), dd) = 1;
    rhs[2 * n()] = 1;
    std::vector<Rational> obj(dd + 1, Rational(0));
    obj[dd] = 1;
    LpResult res = maximize(lhs, rhs, obj);
    if (res.status != LpStatus::Optimal)
        throw Error(ErrorKind::InvalidInput, "margin program did not solve");
    if (res.value == 0)
        throw Error(ErrorKind::DegeneratePerturbation, "perturbed box only touches the coset");
    return res.value > 0;
}

std::optional<std::size_t> ChamberEnumeration::class_of(const TorusEmbedding &emb,
                                                        const Chamber &x) const {
    auto it = by_restriction_.find(emb.restrict_to_t(x));
    if (it == by_restriction_.end())
        return std::nullopt;
    return it->second;
}

std::vector<Chamber> ChamberEnumeration::touching_lifts(const TorusEmbedding &emb,
                                                        const Chamber &x, std::size_t cls) const {
    const std::size_t n = x.size();
    const IntVec target = emb.restrict_to_t(classes_.at(cls).key);
    std::vector<Chamber> out;
    Chamber y = x;
    std::vector<int> digit(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = x[i] - 1;
    while (true) {
        if (emb.restrict_to_t(y) == target)
            out.push_back(y);
        std::size_t i = 0;
        while (i < n && digit[i] == 1) {
            digit[i] = -1;
            y[i] = x[i] - 1;
            ++i;
        }
        if (i == n)
            break;
        ++digit[i];
        ++y[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void ball_walk(const Chamber &center, std::size_t i, std::int64_t budget, Chamber &cur,
               const std::function<void(const Chamber &)> &visit) {
    if (i == center.size()) {
        visit(cur);
        return;
    }
    for (std::int64_t s = -budget; s <= budget; ++s) {
        cur[i] = center[i] + s;
        ball_walk(center, i + 1, budget - std::abs(s), cur, visit);
    }
    cur[i] = center[i];
}

} // namespace

std::vector<Chamber> ChamberEnumeration::lifts_within(const TorusEmbedding &emb, const Chamber &x,
                                                      std::size_t cls, std::int64_t radius) const {
    const IntVec target = emb.restrict_to_t(classes_.at(cls).key);
    std::vector<Chamber> out;
    Chamber cur = x;
    ball_walk(x, 0, radius, cur, [&](const Chamber &y) {
        if (emb.restrict_to_t(y) == target)
            out.push_back(y);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<const AdjacencyEdge *> ChamberEnumeration::alpha(std::size_t cls,
                                                             std::size_t coordinate) const {
    std::vector<const AdjacencyEdge *> out;
    for (const auto &e : edges_)
        if (e.from == cls && e.coordinate == coordinate)
            out.push_back(&e);
    return out;
}

ChamberEnumeration enumerate_classes(const Arrangement &arr, std::optional<Chamber> seed) {
    const auto &emb = arr.embedding();
    const std::size_t n = arr.n();
    Chamber start = seed ? *seed : arr.weight_to_chamber(arr.basepoint());
    auto start_witness = arr.integral_witness(start);
    if (!start_witness)
        throw Error(ErrorKind::InvalidInput, "seed chamber is empty");

    struct Found {
        Chamber key;
        IntVec witness;
    };
    std::vector<Found> found;
    std::map<IntVec, std::size_t> index;  // restriction -> discovery index
    std::set<IntVec> empty;               // restrictions known to be empty
    struct RawEdge {
        std::size_t from;
        IntVec to_restriction;
        std::size_t coordinate;
        int sign;
    };
    std::vector<RawEdge> raw;

    auto admit = [&](const Chamber &y, const IntVec &witness) {
        Chamber key = arr.class_key(y);
        IntVec w = witness;
        for (std::size_t i = 0; i < n; ++i)
            w[i] += arr.p() * (key[i] - y[i]);
        index.emplace(emb.restrict_to_t(y), found.size());
        found.push_back({std::move(key), std::move(w)});
    };

    admit(start, *start_witness);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const Chamber x = found[cur].key;
        for (std::size_t i = 0; i < n; ++i) {
            for (int sign : {-1, 1}) {
                Chamber y = x;
                y[i] += sign;
                IntVec r = emb.restrict_to_t(y);
                if (empty.count(r))
                    continue;
                if (!index.count(r)) {
                    auto w = arr.integral_witness(y);
                    if (!w) {
                        empty.insert(r);
                        continue;
                    }
                    admit(y, *w);
                    queue.push_back(found.size() - 1);
                }
                raw.push_back({cur, std::move(r), i, sign});
            }
        }
    }

    // canonical order: lexicographic by key
    std::vector<std::size_t> order(found.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return found[a].key < found[b].key; });
    std::vector<std::size_t> rank_of(found.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        rank_of[order[i]] = i;

    ChamberEnumeration en;
    for (auto i : order)
        en.classes_.push_back({found[i].key, found[i].witness});
    for (const auto &[r, i] : index)
        en.by_restriction_.emplace(r, rank_of[i]);
    for (const auto &e : raw)
        en.edges_.push_back({rank_of[e.from], rank_of[index.at(e.to_restriction)], e.coordinate, e.sign});
    std::sort(en.edges_.begin(), en.edges_.end(), [](const AdjacencyEdge &a, const AdjacencyEdge &b) {
        return std::tie(a.from, a.coordinate, a.sign, a.to) < std::tie(b.from, b.coordinate, b.sign, b.to);
    });
    return en;
}

std::vector<Chamber> real_class_keys(const Arrangement &arr, std::span<const Rational> eps,
                                     const Chamber &seed) {
    const auto &emb = arr.embedding();
    if (!arr.is_nonempty_real(seed, eps))
        throw Error(ErrorKind::InvalidInput, "seed chamber is not a real chamber");
    std::map<IntVec, Chamber> seen;
    std::set<IntVec> empty;
    std::deque<Chamber> queue{arr.class_key(seed)};
    seen.emplace(emb.restrict_to_t(seed), queue.front());
    while (!queue.empty()) {
        const Chamber x = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < arr.n(); ++i)
            for (int sign : {-1, 1}) {
                Chamber y = x;
                y[i] += sign;
                IntVec r = emb.restrict_to_t(y);
                if (seen.count(r) || empty.count(r))
                    continue;
                if (!arr.is_nonempty_real(y, eps)) {
                    empty.insert(r);
                    continue;
                }
                Chamber key = arr.class_key(y);
                seen.emplace(std::move(r), key);
                queue.push_back(std::move(key));
            }
    }
    std::vector<Chamber> keys;
    for (auto &[r, key] : seen)
        keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<Rational> sample_perturbation(SeededRng &rng, std::size_t n, std::int64_t max_num) {
    std::vector<Rational> eps(n);
    for (auto &e : eps)
        e = rng.dyadic(1, max_num, 16);
    return eps;
}

const char *to_string(SmoothReason r) {
    switch (r) {
    case SmoothReason::BasesCount: return "bases_count";
    case SmoothReason::PerturbationAgree: return "perturbation_agree";
    case SmoothReason::PerturbationDisagree: return "perturbation_disagree";
    }
    return "unknown";
}

namespace {

std::size_t perturbed_count(const Arrangement &arr, SeededRng &rng, std::int64_t max_num) {
    const Chamber seed = arr.weight_to_chamber(arr.basepoint());
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto eps = sample_perturbation(rng, arr.n(), max_num);
        try {
            return real_class_keys(arr, eps, seed).size();
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::DegeneratePerturbation)
                throw;
        }
    }
    throw Error(ErrorKind::DegeneratePerturbation, "no generic perturbation found in 32 samples");
}

} // namespace

SmoothnessReport is_smooth(const Arrangement &arr, const ChamberEnumeration &en, std::uint64_t seed,
                           std::size_t samples) {
    SmoothnessReport rep;
    rep.class_count = en.size();
    rep.bases_count = bases(arr.embedding()).size();
    rep.unimodular = is_unimodular(arr.embedding());
    if (rep.unimodular && rep.class_count == rep.bases_count) {
        rep.smooth = true;
        rep.reason = SmoothReason::BasesCount;
        return rep;
    }
    SeededRng rng(seed ^ 0x5eed5eed5eedULL);
    bool agree = true;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t c = perturbed_count(arr, rng, (1 << 16) - 1);
        rep.perturbed_counts.push_back(c);
        if (c != rep.class_count)
            agree = false;
    }
    rep.smooth = agree;
    rep.reason = agree ? SmoothReason::PerturbationAgree : SmoothReason::PerturbationDisagree;
    return rep;
}

std::size_t real_class_count(const Arrangement &arr, std::uint64_t seed) {
    SeededRng rng(seed ^ 0xa11ce5ULL);
    return perturbed_count(arr, rng, 1 << 12);
}

} // namespace htk
