// Small helpers for 64-bit masks used as subsets of [0, n).
#pragma once

#include <bit>
#include <cstdint>

namespace primsync {

using Mask = std::uint64_t;

inline constexpr Mask full_mask(int n) {
    return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline constexpr int popcount(Mask m) {
    return std::popcount(m);
}

/// Index of the lowest set bit; undefined for m == 0.
inline constexpr int lowest_bit(Mask m) {
    return std::countr_zero(m);
}

/// Visits set bits in ascending order.
template <typename F>
inline void for_each_bit(Mask m, F&& f) {
    while (m != 0) {
        const int b = std::countr_zero(m);
        f(b);
        m &= m - 1;
    }
}

}  // namespace primsync
