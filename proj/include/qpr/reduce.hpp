#pragma once

#include <array>
#include <cstddef>

namespace qpr {

// Floating-point reductions over amplitude arrays are summed in a fixed
// 64-chunk partition regardless of thread count, then combined in chunk
// order. Serial and OpenMP backends therefore produce bitwise-identical
// results, and results do not depend on the number of threads.
inline constexpr int kReduceChunks = 64;

struct ChunkRange {
    std::size_t begin, end;
};

inline ChunkRange reduce_chunk(std::size_t n, int chunk) {
    const std::size_t base = n / kReduceChunks;
    const std::size_t rem = n % kReduceChunks;
    const auto c = static_cast<std::size_t>(chunk);
    const std::size_t begin = c * base + (c < rem ? c : rem);
    const std::size_t len = base + (c < rem ? 1 : 0);
    return {begin, begin + len};
}

// f(i) -> double, accumulated per chunk; parallel flag picks the backend.
template <class F>
double reduce_sum(std::size_t n, bool parallel, F&& f) {
    std::array<double, kReduceChunks> partial{};
#pragma omp parallel for schedule(static) if (parallel)
    for (int c = 0; c < kReduceChunks; ++c) {
        double acc = 0.0;
        const auto [b, e] = reduce_chunk(n, c);
        for (std::size_t i = b; i < e; ++i) acc += f(i);
        partial[c] = acc;
    }
    double total = 0.0;
    for (int c = 0; c < kReduceChunks; ++c) total += partial[c];
    return total;
}

// f(i) -> (re, im) pair accumulated into two doubles
template <class F>
std::array<double, 2> reduce_sum2(std::size_t n, bool parallel, F&& f) {
    std::array<double, kReduceChunks> pre{}, pim{};
#pragma omp parallel for schedule(static) if (parallel)
    for (int c = 0; c < kReduceChunks; ++c) {
        double re = 0.0, im = 0.0;
        const auto [b, e] = reduce_chunk(n, c);
        for (std::size_t i = b; i < e; ++i) {
            const auto v = f(i);
            re += v[0];
            im += v[1];
        }
        pre[c] = re;
        pim[c] = im;
    }
    double re = 0.0, im = 0.0;
    for (int c = 0; c < kReduceChunks; ++c) {
        re += pre[c];
        im += pim[c];
    }
    return {re, im};
}

}  // namespace qpr
