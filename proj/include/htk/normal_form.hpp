#pragma once

#include "htk/exact.hpp"

#include <optional>

namespace htk {

/// Row Hermite normal form: `transform * input == form`, with `transform`
/// unimodular, pivots strictly positive, entries above each pivot reduced
/// into [0, pivot), and zero rows collected at the bottom.
struct HermiteForm {
    IntMatrix form;
    IntMatrix transform;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const noexcept { return pivot_cols.size(); }
};

HermiteForm hermite_rows(const IntMatrix &input);

/// Diagonal of the Smith normal form (nonnegative, each dividing the next);
/// length min(rows, cols).
std::vector<Integer> smith_diagonal(const IntMatrix &input);

/// Rows form a Z-basis of { v : v * m == 0 } (left kernel), in Hermite form.
IntMatrix left_integer_kernel(const IntMatrix &m);

/// Some integer v with v * m == target, if one exists.
std::optional<std::vector<Integer>> solve_left_integer(const IntMatrix &m,
                                                      std::span<const Integer> target);

Integer determinant(const IntMatrix &square);

/// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix &m);
std::size_t rank(const RatMatrix &m);
std::size_t rank(const IntMatrix &m);

/// Columns of the returned matrix span { v : m v = 0 }.
RatMatrix right_nullspace(const RatMatrix &m);

/// A solution of m v = rhs, if any.
std::optional<std::vector<Rational>> solve(const RatMatrix &m, std::span<const Rational> rhs);

RatMatrix to_rational(const IntMatrix &m);

/// Reduce `v` modulo the row lattice of `hermite` (a row Hermite form with
/// the given pivots), giving the canonical coset representative.
IntVec reduce_modulo_rows(const IntMatrix &hermite, std::span<const std::size_t> pivots, IntVec v);

} // namespace htk
