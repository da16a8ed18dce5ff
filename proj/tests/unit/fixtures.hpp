#pragma once

#include "htk/arrangement.hpp"

#include <functional>
#include <set>

namespace fixtures {

// kind of the htk::Error thrown by f, or nothing if it returned normally
inline std::optional<htk::ErrorKind> error_kind(const std::function<void()> &f) {
    try {
        f();
    } catch (const htk::Error &e) {
        return e.kind();
    }
    return std::nullopt;
}

inline htk::Arrangement make(const std::vector<std::vector<std::int64_t>> &rows, std::size_t k, htk::IntVec lambda,
                             std::int64_t p) {
    return {htk::validate_embedding(htk::make_matrix(rows, k)), {std::move(lambda), p}};
}

inline htk::Arrangement p2(std::int64_t lambda, std::int64_t p = 5) {
    return {htk::validate_embedding(htk::make_matrix({{1}, {1}, {1}}, 1)), {{lambda}, p}};
}

inline htk::Arrangement torus(std::size_t n, std::int64_t p = 3) {
    return {htk::validate_embedding(htk::IntMatrix(n, 0)), {{}, p}};
}

// Chamber classes met by lattice points a0 + tperp^T z with z in [0, p)^d: every
// class has such a point because shifting z by p*gamma only moves the chamber
// inside its class.
inline std::set<htk::IntVec> sweep_classes(const htk::Arrangement &arr) {
    const auto &emb = arr.embedding();
    const std::size_t d = arr.d(), n = arr.n();
    std::set<htk::IntVec> out;
    htk::IntVec z(d, 0);
    while (true) {
        htk::IntVec x(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t a = arr.basepoint()[i];
            for (std::size_t r = 0; r < d; ++r)
                a += emb.tperp64()[r][i] * z[r];
            x[i] = htk::floor_div(a, arr.p());
        }
        out.insert(emb.restrict_to_t(x));
        std::size_t r = 0;
        while (r < d && z[r] == arr.p() - 1)
            z[r++] = 0;
        if (r == d)
            break;
        ++z[r];
    }
    return out;
}

} // namespace fixtures
