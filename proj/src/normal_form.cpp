#include "htk/normal_form.hpp"

#include <limits>
#include <utility>

namespace htk {

const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NonSaturated: return "NonSaturated";
    case ErrorKind::NotInCoset: return "NotInCoset";
    case ErrorKind::DegeneratePerturbation: return "DegeneratePerturbation";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::DegenerateFunctional: return "DegenerateFunctional";
    case ErrorKind::TruncationTooLarge: return "TruncationTooLarge";
    case ErrorKind::ExhaustedRejectionBudget: return "ExhaustedRejectionBudget";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::Overflow: return "Overflow";
    }
    return "Unknown";
}

std::int64_t to_int64(const Integer &v) {
    if (!v.fits_slong_p())
        throw Error(ErrorKind::Overflow, "integer does not fit in 64 bits: " + v.get_str());
    return v.get_si();
}

Integer floor_of(const Rational &q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational &q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::int64_t l1_norm(std::span<const std::int64_t> v) {
    std::int64_t s = 0;
    for (auto x : v)
        s += x < 0 ? -x : x;
    return s;
}

IntVec difference(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    IntVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = a[i] - b[i];
    return d;
}

namespace {

// row[a] -= q * row[b] in both the working matrix and its transform.
void sub_row(IntMatrix &m, std::size_t a, std::size_t b, const Integer &q) {
    if (q == 0)
        return;
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(a, c) -= q * m(b, c);
}

void negate_row(IntMatrix &m, std::size_t r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(r, c) = -m(r, c);
}

Integer fdiv(const Integer &a, const Integer &b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

HermiteForm hermite_rows(const IntMatrix &input) {
    HermiteForm out{input, IntMatrix::identity(input.rows()), {}};
    IntMatrix &a = out.form;
    IntMatrix &t = out.transform;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        while (true) {
            std::size_t best = a.rows();
            for (std::size_t i = r; i < a.rows(); ++i) {
                if (a(i, c) == 0)
                    continue;
                if (best == a.rows() || abs(a(i, c)) < abs(a(best, c)))
                    best = i;
            }
            if (best == a.rows())
                break;
            a.swap_rows(r, best);
            t.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < a.rows(); ++i) {
                if (a(i, c) == 0)
                    continue;
                Integer q = fdiv(a(i, c), a(r, c));
                sub_row(a, i, r, q);
                sub_row(t, i, r, q);
                if (a(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (a(r, c) == 0)
            continue;
        if (a(r, c) < 0) {
            negate_row(a, r);
            negate_row(t, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = fdiv(a(i, c), a(r, c));
            sub_row(a, i, r, q);
            sub_row(t, i, r, q);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    return out;
}

std::vector<Integer> smith_diagonal(const IntMatrix &input) {
    IntMatrix a = input;
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t steps = std::min(m, n);
    std::vector<Integer> diag;
    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // bring the smallest nonzero entry of the trailing block to (t, t)
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (bi == m || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) {
                diag.resize(steps, Integer(0));
                for (auto &d : diag)
                    d = abs(d);
                return diag;
            }
            a.swap_rows(t, bi);
            a.swap_cols(t, bj);
            bool done = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                Integer q = fdiv(a(i, t), a(t, t));
                sub_row(a, i, t, q);
                if (a(i, t) != 0)
                    done = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                Integer q = fdiv(a(t, j), a(t, t));
                if (q != 0)
                    for (std::size_t i = 0; i < m; ++i)
                        a(i, j) -= q * a(i, t);
                if (a(t, j) != 0)
                    done = false;
            }
            if (!done)
                continue;
            // divisibility: fold an offending row into row t and go again
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            for (std::size_t j = 0; j < n; ++j)
                a(t, j) += a(bad, j);
        }
        diag.push_back(abs(a(t, t)));
    }
    return diag;
}

IntMatrix left_integer_kernel(const IntMatrix &m) {
    HermiteForm h = hermite_rows(m);
    const std::size_t dim = m.rows() - h.rank();
    IntMatrix basis(dim, m.rows());
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t c = 0; c < m.rows(); ++c)
            basis(i, c) = h.transform(h.rank() + i, c);
    if (dim == 0)
        return basis;
    HermiteForm canon = hermite_rows(basis);
    IntMatrix out(canon.rank(), m.rows());
    for (std::size_t i = 0; i < canon.rank(); ++i)
        for (std::size_t c = 0; c < m.rows(); ++c)
            out(i, c) = canon.form(i, c);
    return out;
}

std::optional<std::vector<Integer>> solve_left_integer(const IntMatrix &m,
                                                      std::span<const Integer> target) {
    if (target.size() != m.cols())
        throw Error(ErrorKind::InvalidInput, "solve_left_integer: size mismatch");
    HermiteForm h = hermite_rows(m);
    std::vector<Integer> u(h.rank());
    for (std::size_t j = 0; j < h.rank(); ++j) {
        const std::size_t pc = h.pivot_cols[j];
        Integer rest = target[pc];
        for (std::size_t i = 0; i < j; ++i)
            rest -= u[i] * h.form(i, pc);
        if (rest % h.form(j, pc) != 0)
            return std::nullopt;
        u[j] = rest / h.form(j, pc);
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
        Integer s = 0;
        for (std::size_t i = 0; i < h.rank(); ++i)
            s += u[i] * h.form(i, c);
        if (s != target[c])
            return std::nullopt;
    }
    std::vector<Integer> v(m.rows(), Integer(0));
    for (std::size_t i = 0; i < h.rank(); ++i)
        for (std::size_t c = 0; c < m.rows(); ++c)
            v[c] += u[i] * h.transform(i, c);
    return v;
}

Integer determinant(const IntMatrix &square) {
    if (square.rows() != square.cols())
        throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
    const std::size_t n = square.rows();
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination
    IntMatrix a = square;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            a.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<std::size_t> rref(RatMatrix &m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(r, p);
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(const RatMatrix &m) {
    RatMatrix copy = m;
    return rref(copy).size();
}

RatMatrix to_rational(const IntMatrix &m) {
    RatMatrix q(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            q(r, c) = m(r, c);
    return q;
}

std::size_t rank(const IntMatrix &m) { return rank(to_rational(m)); }

RatMatrix right_nullspace(const RatMatrix &m) {
    RatMatrix a = m;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    RatMatrix basis(m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis(free_cols[k], k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], k) = -a(r, free_cols[k]);
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const RatMatrix &m, std::span<const Rational> rhs) {
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug(r, c) = m(r, c);
        aug(r, m.cols()) = rhs[r];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols())
        return std::nullopt;
    std::vector<Rational> x(m.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug(r, m.cols());
    return x;
}

IntVec reduce_modulo_rows(const IntMatrix &hermite, std::span<const std::size_t> pivots, IntVec v) {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const std::int64_t h = to_int64(hermite(r, pivots[r]));
        const std::int64_t q = floor_div(v[pivots[r]], h);
        if (q == 0)
            continue;
        for (std::size_t c = 0; c < v.size(); ++c)
            v[c] -= q * to_int64(hermite(r, c));
    }
    return v;
}

} // namespace htk
