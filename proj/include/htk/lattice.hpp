#pragma once

#include "htk/exact.hpp"
#include "htk/normal_form.hpp"

namespace htk {

/// A subtorus T of D = (G_m)^n, given by the n x k matrix whose columns are
/// the cocharacters of T. Immutable once validated.
class TorusEmbedding {
public:
    const IntMatrix &rho() const noexcept { return rho_; }
    std::size_t n() const noexcept { return rho_.rows(); }
    std::size_t k() const noexcept { return rho_.cols(); }
    /// Rank of the quotient G = D / T.
    std::size_t d() const noexcept { return n() - k(); }
    const std::vector<Integer> &smith() const noexcept { return smith_; }

    /// Rows span t^perp = g^* = ker(rho^T) over Z, in row Hermite form.
    const IntMatrix &tperp() const noexcept { return tperp_; }
    const std::vector<std::size_t> &tperp_pivots() const noexcept { return pivots_; }

    /// rho^T a as machine integers (the restriction of a character of D to T).
    IntVec restrict_to_t(std::span<const std::int64_t> a) const;

    /// Canonical representative of x modulo t^perp.
    IntVec reduce(IntVec x) const;

    /// Some a0 with rho^T a0 == lambda.
    IntVec coset_basepoint(std::span<const std::int64_t> lambda) const;

    /// a0 + tperp^T z.
    std::vector<Rational> coset_point(std::span<const std::int64_t> a0,
                                      std::span<const Rational> z) const;

    const std::vector<IntVec> &rho64() const noexcept { return rho64_; }
    const std::vector<IntVec> &tperp64() const noexcept { return tperp64_; }

private:
    friend TorusEmbedding validate_embedding(IntMatrix rho);

    IntMatrix rho_;
    std::vector<Integer> smith_;
    IntMatrix tperp_;
    std::vector<std::size_t> pivots_;
    IntMatrix transform_; // row Hermite transform of rho, used for cosets
    std::vector<IntVec> rho64_;   // columns of rho (k vectors of length n)
    std::vector<IntVec> tperp64_; // rows of tperp (d vectors of length n)
};

/// Checks rank and saturation; throws RankDeficient / NonSaturated.
TorusEmbedding validate_embedding(IntMatrix rho);

/// Builds rho from nested machine-integer rows (n rows of length k).
IntMatrix make_matrix(const std::vector<std::vector<std::int64_t>> &rows, std::size_t cols);

bool is_unimodular(const TorusEmbedding &emb);

using CoordinateSet = std::vector<std::size_t>;

/// (n-k)-subsets of coordinates whose images form a Q-basis of d_Q / t_Q,
/// in lexicographic order (0-based coordinates).
std::vector<CoordinateSet> bases(const TorusEmbedding &emb);

/// Determinant of tperp restricted to the columns in `cols`.
Integer tperp_minor(const TorusEmbedding &emb, const CoordinateSet &cols);

/// Determinant of rho restricted to the rows outside `cols`.
Integer rho_complement_minor(const TorusEmbedding &emb, const CoordinateSet &cols);

/// All size-`size` subsets of {0..n-1} in lexicographic order.
std::vector<CoordinateSet> subsets(std::size_t n, std::size_t size);

} // namespace htk
