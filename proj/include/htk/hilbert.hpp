#pragma once

#include "htk/polytope.hpp"
#include "htk/quiver.hpp"

namespace htk {

// entries[x][y][q] for q = 0..truncation.
struct HilbertMatrix {
    std::size_t truncation = 0;
    std::vector<std::vector<std::vector<std::int64_t>>> entries;

    HilbertMatrix() = default;
    HilbertMatrix(std::size_t classes, std::size_t truncation);
    std::size_t size() const noexcept { return entries.size(); }
    bool operator==(const HilbertMatrix &) const = default;
};

/// dim Sym^j of an r-dimensional space.
Integer monomial_count(std::int64_t r, std::int64_t j);

/// Graded dims of 1_x H 1_y: each lift y contributes a free rank-one module
/// over Sym(g) generated in degree |x - y|_1.
std::vector<std::int64_t> hom_dims_H(const Arrangement &arr, const ChamberEnumeration &en,
                                     std::size_t x, std::size_t y, std::size_t truncation);
HilbertMatrix hom_dims_H(const Arrangement &arr, const ChamberEnumeration &en, std::size_t truncation);

/// Graded dims of e_x H^! e_y from h-vectors of the closed intersections
/// Delta_x meet Delta_y over touching lifts, shifted by |x - y|_1.
std::vector<std::int64_t> ext_dims_from_toric(const Arrangement &arr, const ChamberEnumeration &en,
                                              std::size_t x, std::size_t y, std::size_t truncation);
HilbertMatrix ext_dims_from_toric(const Arrangement &arr, const ChamberEnumeration &en,
                                  std::size_t truncation);

/// Cap on generator cells handled by the oracle (HTK_MAX_CELLS, default 2'000'000).
std::size_t max_oracle_cells();

/// Degree-by-degree dimensions of T(V)/(R) over the vertex idempotents, using
/// the base-eliminated quadratic relations. Throws TruncationTooLarge.
HilbertMatrix truncated_dims_oracle(const Arrangement &arr, const ChamberEnumeration &en,
                                    const QuadraticPresentation &pres, std::size_t truncation);

struct ReciprocityFailure {
    std::size_t x = 0, y = 0, q = 0;
    std::int64_t value = 0;
};

struct KoszulityReport {
    std::size_t truncation = 0;
    std::vector<ReciprocityFailure> failures;
    bool pass() const { return failures.empty(); }
};

/// sum_z sum_j (-1)^j dual[x][z][j] * h[z][y][q - j] == [x == y][q == 0] for q <= truncation.
KoszulityReport koszulity_check(const HilbertMatrix &h, const HilbertMatrix &dual, std::size_t truncation);

} // namespace htk
