#pragma once

#include "htk/quiver.hpp"

namespace htk {

struct TiltingSummands {
    std::vector<Chamber> labels; // one line bundle l(x) per chamber class
    bool generator = false;      // tilting generator exactly when lambda is smooth
};

TiltingSummands tilting_summands(const ChamberEnumeration &en, bool smooth);

// z^z_exp * w^w_exp in Z[z_1..z_n, w_1..w_n].
struct Monomial {
    IntVec z, w;

    std::int64_t degree() const;
    Monomial operator*(const Monomial &o) const;
    bool operator==(const Monomial &) const = default;
    auto operator<=>(const Monomial &) const = default;
    std::string str() const;
};

/// m^p(y - x).
Monomial section(std::span<const std::int64_t> x, std::span<const std::int64_t> y);

/// prod_i (z_i w_i)^{e_i}.
Monomial zw_power(std::span<const std::int64_t> e);

struct EndIsoReport {
    std::size_t checked = 0;
    std::size_t skipped = 0;            // linear relations among the s_i (moment map ideal)
    std::vector<std::size_t> mismatches; // relation indices
    bool pass() const { return mismatches.empty(); }
};

/// Substitutes c_{x,y} -> m^p(y - x), s_i -> z_i w_i into every relation of H.
EndIsoReport verify_end_iso(const QuadraticPresentation &h);

/// m(y - x) m(u - y) == prod (z w)^eta(x, y, u) m(u - x).
bool eta_shadow_holds(const Chamber &x, const Chamber &y, const Chamber &u);

/// m(y - x) m(x - y) == prod (z w)^{|x - y|}.
bool reverse_shadow_holds(const Chamber &x, const Chamber &y);

struct DegreeRow {
    std::size_t from = 0;
    std::size_t to = 0;
    Chamber lift;
    std::int64_t section_degree = 0; // degree of m^p(lift - rep(from))
    std::int64_t path_degree = 0;    // shortest quiver path reaching the lift, -1 if none within radius
};

/// Lifts of every class within taxicab radius `radius` of each representative.
std::vector<DegreeRow> degree_table(const Arrangement &arr, const ChamberEnumeration &en, std::int64_t radius);

/// Graded count of monomial sections of Hom(l(x), l(y)): monomials of C[z, w] of
/// D-weight in the class, cut down by the k moment map equations.
std::vector<std::int64_t> section_count_dims(const Arrangement &arr, const ChamberEnumeration &en,
                                             std::size_t x, std::size_t y, std::size_t truncation);

} // namespace htk
