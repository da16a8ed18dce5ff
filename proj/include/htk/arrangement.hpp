#pragma once

#include "htk/lattice.hpp"
#include "htk/random.hpp"

#include <map>
#include <optional>

namespace htk {

/// Integral lift of the quantization character together with the period p.
struct Parameter {
    IntVec lambda;
    std::int64_t p = 2;

    /// Non-prime periods are accepted; the combinatorics only needs p >= 2.
    bool p_is_prime() const;
};

using Chamber = IntVec;

/// The periodic arrangement a_i = kp - 1/2 on the coset { a : rho^T a = lambda }.
/// Pure queries on immutable state; safe to share across threads.
class Arrangement {
public:
    Arrangement(TorusEmbedding emb, Parameter param);

    const TorusEmbedding &embedding() const noexcept { return emb_; }
    const Parameter &parameter() const noexcept { return param_; }
    std::int64_t p() const noexcept { return param_.p; }
    std::size_t n() const noexcept { return emb_.n(); }
    std::size_t d() const noexcept { return emb_.d(); }
    const IntVec &basepoint() const noexcept { return a0_; }

    bool in_coset(std::span<const std::int64_t> a) const;

    /// x_i = floor(a_i / p); throws NotInCoset.
    Chamber weight_to_chamber(std::span<const std::int64_t> a) const;

    /// Number of hyperplanes a_i = kp - 1/2 separating the two weights, per coordinate.
    IntVec delta(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;

    /// A lattice point of the coset inside the box [px_i, px_i + p), if any.
    std::optional<IntVec> integral_witness(const Chamber &x) const;
    bool is_nonempty_integral(const Chamber &x) const { return integral_witness(x).has_value(); }

    /// Does the open box px_i - eps_i < a_i < px_i + p - eps_i meet the real coset?
    /// Throws DegeneratePerturbation when only the closure does.
    bool is_nonempty_real(const Chamber &x, std::span<const Rational> eps) const;

    /// Canonical representative of the class of x modulo t^perp.
    Chamber class_key(const Chamber &x) const { return emb_.reduce(x); }

private:
    TorusEmbedding emb_;
    Parameter param_;
    IntVec a0_;
};

/// Exponents of the relation c_{x,y} c_{y,u} = prod s_i^{eta_i} c_{x,u}.
IntVec eta(std::span<const std::int64_t> x, std::span<const std::int64_t> y,
           std::span<const std::int64_t> u);

struct ChamberClass {
    Chamber key;     // Hermite-reduced, also used as the representative chamber
    IntVec witness;  // lattice point of the coset inside Delta_key
};

/// Adjacency across coordinate `coordinate`: representative of `from`
/// shifted by sign * e_coordinate lies in class `to`.
struct AdjacencyEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t coordinate = 0;
    int sign = 1;

    bool operator==(const AdjacencyEdge &) const = default;
};

/// Chamber classes of the toroidal arrangement, sorted by key.
class ChamberEnumeration {
public:
    const std::vector<ChamberClass> &classes() const noexcept { return classes_; }
    const std::vector<AdjacencyEdge> &edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return classes_.size(); }

    /// Class index of any chamber, or nullopt when the chamber is empty.
    std::optional<std::size_t> class_of(const TorusEmbedding &emb, const Chamber &x) const;

    /// Lifts y of class `cls` with |x_i - y_i| <= 1 for all i (the only ones
    /// whose closed chambers can meet Delta_x).
    std::vector<Chamber> touching_lifts(const TorusEmbedding &emb, const Chamber &x,
                                        std::size_t cls) const;

    /// Lifts y of class `cls` with |x - y|_1 <= radius.
    std::vector<Chamber> lifts_within(const TorusEmbedding &emb, const Chamber &x,
                                      std::size_t cls, std::int64_t radius) const;

    /// Neighbours of representative of `cls` across coordinate i: alpha_i(x).
    std::vector<const AdjacencyEdge *> alpha(std::size_t cls, std::size_t coordinate) const;

private:
    friend ChamberEnumeration enumerate_classes(const Arrangement &, std::optional<Chamber>);
    std::vector<ChamberClass> classes_;
    std::vector<AdjacencyEdge> edges_;
    std::map<IntVec, std::size_t> by_restriction_; // rho^T x -> class index
};

/// Breadth-first search over |x - y|_1 = 1 adjacencies, canonicalising by
/// class key. The seed defaults to the chamber of the coset basepoint.
ChamberEnumeration enumerate_classes(const Arrangement &arr,
                                     std::optional<Chamber> seed = std::nullopt);

/// Class keys of the real chambers of the eps-perturbed arrangement.
std::vector<Chamber> real_class_keys(const Arrangement &arr, std::span<const Rational> eps,
                                     const Chamber &seed);

/// Generic perturbation with entries num / 2^16 in (0, 1).
std::vector<Rational> sample_perturbation(SeededRng &rng, std::size_t n,
                                          std::int64_t max_num = (1 << 16) - 1);

enum class SmoothReason { BasesCount, PerturbationAgree, PerturbationDisagree };
const char *to_string(SmoothReason r);

struct SmoothnessReport {
    bool smooth = false;
    SmoothReason reason = SmoothReason::BasesCount;
    std::size_t class_count = 0;
    std::size_t bases_count = 0;
    bool unimodular = true;
    std::vector<std::size_t> perturbed_counts; // one per perturbation sample tried
};

SmoothnessReport is_smooth(const Arrangement &arr, const ChamberEnumeration &en,
                           std::uint64_t seed = 0, std::size_t samples = 8);

/// Class count of the half-open real chambers at lambda itself, computed with a
/// small generic perturbation (entries below 1/16).
std::size_t real_class_count(const Arrangement &arr, std::uint64_t seed = 0);

} // namespace htk
