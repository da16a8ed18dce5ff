#include "htk/lattice.hpp"

namespace htk {

IntMatrix make_matrix(const std::vector<std::vector<std::int64_t>> &rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error(ErrorKind::InvalidInput, "ragged matrix row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = static_cast<long>(rows[r][c]);
    }
    return m;
}

TorusEmbedding validate_embedding(IntMatrix rho) {
    TorusEmbedding emb;
    const std::size_t n = rho.rows(), k = rho.cols();
    if (k > n)
        throw Error(ErrorKind::InvalidInput, "subtorus rank exceeds ambient rank");
    if (rank(rho) != k)
        throw Error(ErrorKind::RankDeficient,
                    "rho has rank " + std::to_string(rank(rho)) + " < k = " + std::to_string(k));
    emb.smith_ = smith_diagonal(rho);
    for (const auto &s : emb.smith_)
        if (s != 1)
            throw Error(ErrorKind::NonSaturated,
                        "rho^T is not onto Z^k (Smith diagonal entry " + s.get_str() + ")");
    emb.rho_ = std::move(rho);
    emb.tperp_ = left_integer_kernel(emb.rho_);
    emb.pivots_ = hermite_rows(emb.tperp_).pivot_cols;

    emb.rho64_.assign(k, IntVec(n));
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < n; ++r)
            emb.rho64_[c][r] = to_int64(emb.rho_(r, c));
    emb.tperp64_.assign(emb.tperp_.rows(), IntVec(n));
    for (std::size_t r = 0; r < emb.tperp_.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            emb.tperp64_[r][c] = to_int64(emb.tperp_(r, c));
    return emb;
}

IntVec TorusEmbedding::restrict_to_t(std::span<const std::int64_t> a) const {
    IntVec out(k(), 0);
    for (std::size_t c = 0; c < k(); ++c)
        for (std::size_t i = 0; i < n(); ++i)
            out[c] += rho64_[c][i] * a[i];
    return out;
}

IntVec TorusEmbedding::reduce(IntVec x) const {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        const auto &row = tperp64_[r];
        const std::int64_t q = floor_div(x[pivots_[r]], row[pivots_[r]]);
        if (q == 0)
            continue;
        for (std::size_t c = 0; c < x.size(); ++c)
            x[c] -= q * row[c];
    }
    return x;
}

IntVec TorusEmbedding::coset_basepoint(std::span<const std::int64_t> lambda) const {
    if (lambda.size() != k())
        throw Error(ErrorKind::InvalidInput, "lambda must have k entries");
    std::vector<Integer> target(k());
    for (std::size_t c = 0; c < k(); ++c)
        target[c] = static_cast<long>(lambda[c]);
    auto sol = solve_left_integer(rho_, target);
    if (!sol)
        throw Error(ErrorKind::NonSaturated, "lambda is not in the image of rho^T");
    IntVec a(n());
    for (std::size_t i = 0; i < n(); ++i)
        a[i] = to_int64((*sol)[i]);
    return a;
}

std::vector<Rational> TorusEmbedding::coset_point(std::span<const std::int64_t> a0,
                                                  std::span<const Rational> z) const {
    std::vector<Rational> a(n());
    for (std::size_t i = 0; i < n(); ++i) {
        a[i] = static_cast<long>(a0[i]);
        for (std::size_t r = 0; r < tperp64_.size(); ++r)
            if (tperp64_[r][i] != 0)
                a[i] += static_cast<long>(tperp64_[r][i]) * z[r];
    }
    return a;
}

std::vector<CoordinateSet> subsets(std::size_t n, std::size_t size) {
    std::vector<CoordinateSet> out;
    if (size > n)
        return out;
    CoordinateSet cur(size);
    for (std::size_t i = 0; i < size; ++i)
        cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = size;
        while (i > 0 && cur[i - 1] == n - size + i - 1)
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < size; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

Integer tperp_minor(const TorusEmbedding &emb, const CoordinateSet &cols) {
    const std::size_t d = emb.d();
    IntMatrix sub(d, cols.size());
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            sub(r, c) = emb.tperp()(r, cols[c]);
    return determinant(sub);
}

Integer rho_complement_minor(const TorusEmbedding &emb, const CoordinateSet &cols) {
    std::vector<bool> in(emb.n(), false);
    for (auto c : cols)
        in[c] = true;
    IntMatrix sub(emb.k(), emb.k());
    std::size_t r = 0;
    for (std::size_t i = 0; i < emb.n(); ++i) {
        if (in[i])
            continue;
        for (std::size_t c = 0; c < emb.k(); ++c)
            sub(r, c) = emb.rho()(i, c);
        ++r;
    }
    return determinant(sub);
}

std::vector<CoordinateSet> bases(const TorusEmbedding &emb) {
    std::vector<CoordinateSet> out;
    for (auto &s : subsets(emb.n(), emb.d()))
        if (tperp_minor(emb, s) != 0)
            out.push_back(std::move(s));
    return out;
}

bool is_unimodular(const TorusEmbedding &emb) {
    for (const auto &s : subsets(emb.n(), emb.d())) {
        const Integer m = tperp_minor(emb, s);
        if (m != 0 && abs(m) != 1)
            return false;
    }
    return true;
}

} // namespace htk
