// OpenMP kernels. Loops are remapped to flat index ranges so every
// iteration touches a disjoint amplitude pair; reductions go through the
// fixed-chunk scheme in reduce.hpp, which keeps results independent of the
// thread count and bitwise-reproducible across runs.

#include "bits.hpp"
#include "qpr/reduce.hpp"
#include "qpr/statevec.hpp"

namespace qpr::kern::par {

namespace {
// Below this size the fork/join overhead dominates; run on one thread.
constexpr std::size_t kParallelCutoff = std::size_t{1} << 13;

inline bool big(std::size_t work) { return work >= kParallelCutoff; }
}  // namespace

void apply_1q(cd* amp, std::size_t dim, int qubit, const Mat2& u) {
    const std::size_t step = std::size_t{1} << qubit;
    const std::size_t half = dim / 2;
    const std::size_t low = step - 1;
#pragma omp parallel for schedule(static) if (big(half))
    for (std::size_t h = 0; h < half; ++h) {
        const std::size_t i0 = ((h & ~low) << 1) | (h & low);
        const std::size_t i1 = i0 | step;
        const cd a = amp[i0], b = amp[i1];
        amp[i0] = u.m00 * a + u.m01 * b;
        amp[i1] = u.m10 * a + u.m11 * b;
    }
}

void apply_ctrl_1q(cd* amp, std::size_t dim, int control, int target, const Mat2& u) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t quarter = dim / 4;
#pragma omp parallel for schedule(static) if (big(quarter))
    for (std::size_t h = 0; h < quarter; ++h) {
        const std::size_t i0 = insert_zero_bits2(h, control, target) | cmask;
        const std::size_t i1 = i0 | tmask;
        const cd a = amp[i0], b = amp[i1];
        amp[i0] = u.m00 * a + u.m01 * b;
        amp[i1] = u.m10 * a + u.m11 * b;
    }
}

void apply_ctrl_proj_1q(cd* amp, std::size_t dim, int control, int target, const Mat2& u) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t half = dim / 2;
    const std::size_t low = cmask - 1;
    // zero the control-0 block
#pragma omp parallel for schedule(static) if (big(half))
    for (std::size_t h = 0; h < half; ++h) {
        const std::size_t i = ((h & ~low) << 1) | (h & low);
        amp[i] = 0.0;
    }
    const std::size_t quarter = dim / 4;
#pragma omp parallel for schedule(static) if (big(quarter))
    for (std::size_t h = 0; h < quarter; ++h) {
        const std::size_t i0 = insert_zero_bits2(h, control, target) | cmask;
        const std::size_t i1 = i0 | tmask;
        const cd a = amp[i0], b = amp[i1];
        amp[i0] = u.m00 * a + u.m01 * b;
        amp[i1] = u.m10 * a + u.m11 * b;
    }
}

void apply_swap_bits(cd* amp, std::size_t dim, int i, int j) {
    const std::size_t imask = std::size_t{1} << i;
    const std::size_t jmask = std::size_t{1} << j;
    const std::size_t quarter = dim / 4;
#pragma omp parallel for schedule(static) if (big(quarter))
    for (std::size_t h = 0; h < quarter; ++h) {
        const std::size_t src = insert_zero_bits2(h, i, j) | imask;
        const std::size_t dst = (src ^ imask) | jmask;
        const cd t = amp[src];
        amp[src] = amp[dst];
        amp[dst] = t;
    }
}

void apply_cswap(cd* amp, std::size_t dim, int control, int a, int b) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t amask = std::size_t{1} << a;
    const std::size_t bmask = std::size_t{1} << b;
    const std::size_t eighth = dim / 8;
#pragma omp parallel for schedule(static) if (big(eighth))
    for (std::size_t h = 0; h < eighth; ++h) {
        const std::size_t src = insert_zero_bits3(h, control, a, b) | cmask | amask;
        const std::size_t dst = (src ^ amask) | bmask;
        const cd t = amp[src];
        amp[src] = amp[dst];
        amp[dst] = t;
    }
}

cd inner(const cd* a, const cd* b, std::size_t dim) {
    const auto s = reduce_sum2(dim, big(dim), [&](std::size_t i) -> std::array<double, 2> {
        const cd v = std::conj(a[i]) * b[i];
        return {v.real(), v.imag()};
    });
    return {s[0], s[1]};
}

double prob_zero(const cd* amp, std::size_t dim, int qubit) {
    const std::size_t step = std::size_t{1} << qubit;
    const std::size_t low = step - 1;
    return reduce_sum(dim / 2, big(dim / 2), [&](std::size_t h) {
        const std::size_t i = ((h & ~low) << 1) | (h & low);
        return std::norm(amp[i]);
    });
}

double norm_sq(const cd* amp, std::size_t dim) {
    return reduce_sum(dim, big(dim), [&](std::size_t i) { return std::norm(amp[i]); });
}

cd swap_overlap(const cd* amp, std::size_t dim, int i, int j) {
    const auto s = reduce_sum2(dim, big(dim), [&](std::size_t m) -> std::array<double, 2> {
        const cd v = std::conj(amp[m]) * amp[swap_index_bits(m, i, j)];
        return {v.real(), v.imag()};
    });
    return {s[0], s[1]};
}

void pauli_axpy(cd* out, const cd* in, std::size_t dim, std::uint32_t flip,
                std::uint32_t sign_mask, cd scale) {
#pragma omp parallel for schedule(static) if (big(dim))
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t src = j ^ flip;
        const double sign = parity(static_cast<std::uint32_t>(src) & sign_mask) ? -1.0 : 1.0;
        out[j] += scale * sign * in[src];
    }
}

cd pauli_expect(const cd* amp, std::size_t dim, std::uint32_t flip,
                std::uint32_t sign_mask, cd y_phase) {
    const auto s = reduce_sum2(dim, big(dim), [&](std::size_t j) -> std::array<double, 2> {
        const std::size_t src = j ^ flip;
        const double sign = parity(static_cast<std::uint32_t>(src) & sign_mask) ? -1.0 : 1.0;
        const cd v = std::conj(amp[j]) * (y_phase * sign * amp[src]);
        return {v.real(), v.imag()};
    });
    return {s[0], s[1]};
}

}  // namespace qpr::kern::par
