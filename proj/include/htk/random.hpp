#pragma once

#include "htk/exact.hpp"

#include <random>

namespace htk {

// Platform-independent draws on top of mt19937_64 (the standard distributions
// are implementation-defined, which would break byte-identical reports).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1)
            return 0;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// A rational num / 2^bits with num uniform in [lo_num, hi_num].
    Rational dyadic(std::int64_t lo_num, std::int64_t hi_num, unsigned bits) {
        Rational q(static_cast<long>(uniform(lo_num, hi_num)));
        q /= Rational(Integer(1) << bits);
        q.canonicalize();
        return q;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace htk
