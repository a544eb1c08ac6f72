#pragma once

#include <cstddef>
#include <cstdint>

namespace qpr::kern {

// Insert a zero bit at position `pos`, shifting higher bits up.
inline std::size_t insert_zero_bit(std::size_t h, int pos) {
    const std::size_t mask = (std::size_t{1} << pos) - 1;
    return ((h & ~mask) << 1) | (h & mask);
}

// Insert zero bits at two distinct positions (final positions p1 != p2).
inline std::size_t insert_zero_bits2(std::size_t h, int p1, int p2) {
    const int lo = p1 < p2 ? p1 : p2;
    const int hi = p1 < p2 ? p2 : p1;
    return insert_zero_bit(insert_zero_bit(h, lo), hi);
}

inline std::size_t insert_zero_bits3(std::size_t h, int p1, int p2, int p3) {
    int a = p1, b = p2, c = p3;
    if (a > b) { const int t = a; a = b; b = t; }
    if (b > c) { const int t = b; b = c; c = t; }
    if (a > b) { const int t = a; a = b; b = t; }
    return insert_zero_bit(insert_zero_bit(insert_zero_bit(h, a), b), c);
}

// Exchange bit positions i and j of the index m.
inline std::size_t swap_index_bits(std::size_t m, int i, int j) {
    const std::size_t bi = (m >> i) & 1u;
    const std::size_t bj = (m >> j) & 1u;
    if (bi == bj) return m;
    return m ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
}

inline int parity(std::uint32_t v) { return __builtin_parity(v); }

}  // namespace qpr::kern
