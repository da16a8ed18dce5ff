#include "htk/lp.hpp"

namespace htk {

namespace {

// Dense tableau with basis bookkeeping. Columns: y+ (m), y- (m), slacks (r),
// artificials (one per row with negative rhs), then the rhs column.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : t_(rows, cols + 1), basis_(rows) {}

    Rational &at(std::size_t r, std::size_t c) { return t_(r, c); }
    Rational &rhs(std::size_t r) { return t_(r, t_.cols() - 1); }
    std::size_t rows() const { return t_.rows(); }
    std::size_t cols() const { return t_.cols() - 1; }
    std::vector<std::size_t> &basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c, std::vector<Rational> &cost, Rational &cost_value) {
        const Rational inv = 1 / t_(r, c);
        for (std::size_t j = 0; j < t_.cols(); ++j)
            if (t_(r, j) != 0)
                t_(r, j) *= inv;
        for (std::size_t i = 0; i < t_.rows(); ++i) {
            if (i == r || t_(i, c) == 0)
                continue;
            const Rational f = t_(i, c);
            for (std::size_t j = 0; j < t_.cols(); ++j)
                if (t_(r, j) != 0)
                    t_(i, j) -= f * t_(r, j);
        }
        if (cost[c] != 0) {
            const Rational f = cost[c];
            for (std::size_t j = 0; j < cols(); ++j)
                if (t_(r, j) != 0)
                    cost[j] -= f * t_(r, j);
            cost_value += f * rhs(r);
        }
        basis_[r] = c;
    }

    // Maximizes the reduced-cost row. Returns false when unbounded.
    // `cost[j]` holds reduced costs (positive = improving); `allowed` masks columns.
    bool run(std::vector<Rational> &cost, Rational &cost_value, const std::vector<bool> &allowed) {
        while (true) {
            std::size_t enter = cols();
            for (std::size_t j = 0; j < cols(); ++j)
                if (allowed[j] && cost[j] > 0) {
                    enter = j;
                    break;
                }
            if (enter == cols())
                return true;
            std::size_t leave = rows();
            Rational best;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (t_(i, enter) <= 0)
                    continue;
                Rational ratio = rhs(i) / t_(i, enter);
                if (leave == rows() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows())
                return false;
            pivot(leave, enter, cost, cost_value);
        }
    }

private:
    RatMatrix t_;
    std::vector<std::size_t> basis_;
};

} // namespace

LpResult maximize(const RatMatrix &lhs, std::span<const Rational> rhs,
                  std::span<const Rational> objective) {
    const std::size_t r = lhs.rows(), m = lhs.cols();
    if (rhs.size() != r || objective.size() != m)
        throw Error(ErrorKind::InvalidInput, "maximize: dimension mismatch");

    std::vector<std::size_t> art_row;
    for (std::size_t i = 0; i < r; ++i)
        if (rhs[i] < 0)
            art_row.push_back(i);
    const std::size_t n_art = art_row.size();
    const std::size_t n_cols = 2 * m + r + n_art;
    Tableau tab(r, n_cols);

    std::size_t art = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const bool flip = rhs[i] < 0;
        const int s = flip ? -1 : 1;
        for (std::size_t j = 0; j < m; ++j) {
            tab.at(i, j) = s * lhs(i, j);
            tab.at(i, m + j) = -s * lhs(i, j);
        }
        tab.at(i, 2 * m + i) = s;
        tab.rhs(i) = s * rhs[i];
        if (flip) {
            tab.at(i, 2 * m + r + art) = 1;
            tab.basis()[i] = 2 * m + r + art;
            ++art;
        } else {
            tab.basis()[i] = 2 * m + i;
        }
    }

    std::vector<bool> allowed(n_cols, true);
    if (n_art > 0) {
        // phase 1: maximize -sum(artificials)
        std::vector<Rational> cost(n_cols, Rational(0));
        Rational value = 0;
        for (std::size_t row : art_row) {
            for (std::size_t j = 0; j < 2 * m + r; ++j)
                cost[j] += tab.at(row, j);
            value -= tab.rhs(row);
        }
        tab.run(cost, value, allowed);
        if (value != 0)
            return {LpStatus::Infeasible, 0, {}};
        // drive remaining artificials out of the basis
        for (std::size_t i = 0; i < r; ++i) {
            if (tab.basis()[i] < 2 * m + r)
                continue;
            for (std::size_t j = 0; j < 2 * m + r; ++j)
                if (tab.at(i, j) != 0) {
                    tab.pivot(i, j, cost, value);
                    break;
                }
        }
        for (std::size_t j = 2 * m + r; j < n_cols; ++j)
            allowed[j] = false;
    }

    std::vector<Rational> cost(n_cols, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
        cost[j] = objective[j];
        cost[m + j] = -objective[j];
    }
    Rational value = 0;
    // express the objective in terms of the current nonbasic columns
    for (std::size_t i = 0; i < r; ++i) {
        const std::size_t b = tab.basis()[i];
        if (cost[b] == 0)
            continue;
        const Rational f = cost[b];
        for (std::size_t j = 0; j < n_cols; ++j)
            if (tab.at(i, j) != 0)
                cost[j] -= f * tab.at(i, j);
        value += f * tab.rhs(i);
    }
    if (!tab.run(cost, value, allowed))
        return {LpStatus::Unbounded, 0, {}};

    std::vector<Rational> full(n_cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
        full[tab.basis()[i]] = tab.rhs(i);
    LpResult res{LpStatus::Optimal, value, std::vector<Rational>(m)};
    for (std::size_t j = 0; j < m; ++j)
        res.point[j] = full[j] - full[m + j];
    return res;
}

} // namespace htk
