#pragma once

#include "htk/exact.hpp"

namespace htk {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> point;
};

/// Exact two-phase simplex (Bland's rule) for
///   maximize  objective . y   subject to  lhs * y <= rhs,   y free.
LpResult maximize(const RatMatrix &lhs, std::span<const Rational> rhs,
                  std::span<const Rational> objective);

} // namespace htk
