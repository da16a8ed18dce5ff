#pragma once

#include "htk/arrangement.hpp"

namespace htk {

// Hyperplane a_coordinate = level, with level = kp - 1/2.
struct Hyperplane {
    std::size_t coordinate = 0;
    Rational level;
    bool operator==(const Hyperplane &) const = default;
};

/// Closed chamber box (or intersection of two) inside the coset, written in
/// coordinates w of its own affine hull:  a = origin + basis * w,  lhs * w <= rhs.
/// Every row is a genuine half-space (implicit equalities are absorbed into the
/// hull), and rows defining the same half-space are merged.
struct RationalPolytope {
    Chamber x;
    std::optional<Chamber> y;
    std::vector<Rational> origin;
    RatMatrix basis;
    RatMatrix lhs;
    std::vector<Rational> rhs;
    std::vector<std::vector<Hyperplane>> labels; // per row

    std::size_t dim() const noexcept { return basis.cols(); }
    std::size_t ambient() const noexcept { return origin.size(); }
    std::vector<Rational> to_weight(std::span<const Rational> w) const;
};

/// Closure of Delta_x, or of Delta_x meet Delta_y; throws EmptyIntersection.
RationalPolytope polytope(const Arrangement &arr, const Chamber &x,
                          const std::optional<Chamber> &y = std::nullopt);
std::optional<RationalPolytope> try_polytope(const Arrangement &arr, const Chamber &x,
                                             const std::optional<Chamber> &y = std::nullopt);

struct Vertex {
    std::vector<Rational> w;
    std::vector<Rational> a;
    std::vector<std::size_t> tight; // sorted row indices
};

struct VertexEdgeGraph {
    std::size_t dim = 0;
    std::vector<Vertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool simple = true; // false when some vertex has more than dim tight rows
};

VertexEdgeGraph vertices_and_edges(const RationalPolytope &poly);

using HVector = std::vector<std::int64_t>;

/// Morse count: h_i = number of vertices with i edges going down under xi.
/// Throws NotSimple, or DegenerateFunctional when xi ties along an edge.
HVector h_vector(const VertexEdgeGraph &graph, std::span<const Rational> xi);

/// Same, re-sampling xi from rng until it is generic.
HVector h_vector(const VertexEdgeGraph &graph, SeededRng &rng);

/// h-vector from the f-vector of the dual simplicial complex.
HVector sr_dims(const VertexEdgeGraph &graph);

bool is_palindromic(const HVector &h);

struct Intersection {
    std::size_t from = 0;
    std::size_t to = 0;
    Chamber lift; // lift of `to` touching the representative of `from`
    std::size_t dim = 0;
};

struct CoreComplex {
    std::vector<Intersection> pieces;        // nonempty intersections only
    std::vector<std::size_t> codim_profile;  // count of pieces by codimension
    std::size_t expected_codim_violations = 0; // dim != d - |x - y|_1
};

CoreComplex core_complex(const Arrangement &arr, const ChamberEnumeration &en);

} // namespace htk
