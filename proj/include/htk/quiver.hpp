#pragma once

#include "htk/arrangement.hpp"

#include <map>

namespace htk {

// Arrow c_x^{sign i} (or d_x^{sign i}): from class `source` across hyperplane
// family `coordinate`; the lifted endpoint is rep(source) + sign * e_coordinate.
struct Arrow {
    std::size_t source = 0;
    std::size_t target = 0;
    std::size_t coordinate = 0;
    int sign = 1;
};

enum class RelationKind {
    WallCross,
    Codim1,
    Codim2,
    BaseLinear,
    WallCrossBang,
    Codim1Bang,
    Codim2Bang,
    DoubleStep,
};
const char *to_string(RelationKind kind);

// A coefficient times either a length-2 path (arrows in traversal order) or a
// base symbol s_i / t_i times the idempotent at the relation's source.
struct Term {
    Rational coef;
    std::vector<std::size_t> path;
    std::optional<std::size_t> base;
};

struct Relation {
    RelationKind kind;
    std::optional<std::size_t> source; // empty for the linear relations among base symbols
    IntVec displacement;               // lifted endpoint minus rep(source)
    std::vector<Term> terms;
};

// All length-2 paths from one class with a fixed lifted endpoint, with the
// span of relations after base symbols are eliminated.
struct RelationGroup {
    std::size_t source = 0;
    std::size_t target = 0;
    IntVec displacement;
    std::vector<std::array<std::size_t, 2>> paths; // sorted
    std::vector<std::vector<Rational>> relations;  // rows over `paths`, in RREF
};

enum class Side { H, HDual };

struct QuadraticPresentation {
    Side side = Side::H;
    std::vector<Chamber> vertices; // class keys
    std::vector<Arrow> arrows;     // same indexing on both sides (the pairing)
    std::vector<std::vector<std::size_t>> out_arrows;
    std::vector<Relation> relations;
    std::vector<RelationGroup> groups;
    std::map<std::pair<std::size_t, IntVec>, std::size_t> group_index;
    bool smooth = true;

    IntVec step(std::size_t arrow) const;
    std::string arrow_name(std::size_t arrow) const;
};

QuadraticPresentation build_H(const Arrangement &arr, const ChamberEnumeration &en, bool smooth = true);
QuadraticPresentation build_H_dual(const Arrangement &arr, const ChamberEnumeration &en,
                                   bool smooth = true);

struct DualityEntry {
    std::size_t source = 0;
    std::size_t target = 0;
    std::size_t paths = 0;
    std::size_t dim_h = 0;
    std::size_t dim_dual = 0;
    bool orthogonal = true;
    bool ok() const { return orthogonal && dim_h + dim_dual == paths; }
};

struct DualityReport {
    std::vector<DualityEntry> pairs; // one per (source, target) class pair with paths
    bool pass() const;
};

DualityReport quadratic_duality_check(const QuadraticPresentation &h, const QuadraticPresentation &dual);

} // namespace htk
