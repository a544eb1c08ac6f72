// Serial reference kernels. Plain loops, no threading; kept as the ground
// truth the OpenMP kernels are tested against and benchmarked over.

#include "bits.hpp"
#include "qpr/statevec.hpp"

namespace qpr::kern::serial {

void apply_1q(cd* amp, std::size_t dim, int qubit, const Mat2& u) {
    const std::size_t step = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t k = 0; k < step; ++k) {
            const std::size_t i0 = base + k;
            const std::size_t i1 = i0 + step;
            const cd a = amp[i0], b = amp[i1];
            amp[i0] = u.m00 * a + u.m01 * b;
            amp[i1] = u.m10 * a + u.m11 * b;
        }
    }
}

void apply_ctrl_1q(cd* amp, std::size_t dim, int control, int target, const Mat2& u) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            const std::size_t j = i | tmask;
            const cd a = amp[i], b = amp[j];
            amp[i] = u.m00 * a + u.m01 * b;
            amp[j] = u.m10 * a + u.m11 * b;
        }
    }
}

void apply_ctrl_proj_1q(cd* amp, std::size_t dim, int control, int target, const Mat2& u) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) == 0) {
            amp[i] = 0.0;
        } else if ((i & tmask) == 0) {
            const std::size_t j = i | tmask;
            const cd a = amp[i], b = amp[j];
            amp[i] = u.m00 * a + u.m01 * b;
            amp[j] = u.m10 * a + u.m11 * b;
        }
    }
}

void apply_swap_bits(cd* amp, std::size_t dim, int i, int j) {
    const std::size_t imask = std::size_t{1} << i;
    const std::size_t jmask = std::size_t{1} << j;
    for (std::size_t m = 0; m < dim; ++m) {
        if ((m & imask) != 0 && (m & jmask) == 0) {
            const std::size_t p = (m ^ imask) | jmask;
            const cd t = amp[m];
            amp[m] = amp[p];
            amp[p] = t;
        }
    }
}

void apply_cswap(cd* amp, std::size_t dim, int control, int a, int b) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t amask = std::size_t{1} << a;
    const std::size_t bmask = std::size_t{1} << b;
    for (std::size_t m = 0; m < dim; ++m) {
        if ((m & cmask) != 0 && (m & amask) != 0 && (m & bmask) == 0) {
            const std::size_t p = (m ^ amask) | bmask;
            const cd t = amp[m];
            amp[m] = amp[p];
            amp[p] = t;
        }
    }
}

cd inner(const cd* a, const cd* b, std::size_t dim) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const cd v = std::conj(a[i]) * b[i];
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

double prob_zero(const cd* amp, std::size_t dim, int qubit) {
    const std::size_t qmask = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        if ((i & qmask) == 0) p += std::norm(amp[i]);
    return p;
}

double norm_sq(const cd* amp, std::size_t dim) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += std::norm(amp[i]);
    return s;
}

cd swap_overlap(const cd* amp, std::size_t dim, int i, int j) {
    double re = 0.0, im = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
        const cd v = std::conj(amp[m]) * amp[swap_index_bits(m, i, j)];
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

void pauli_axpy(cd* out, const cd* in, std::size_t dim, std::uint32_t flip,
                std::uint32_t sign_mask, cd scale) {
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t src = j ^ flip;
        const double sign = parity(static_cast<std::uint32_t>(src) & sign_mask) ? -1.0 : 1.0;
        out[j] += scale * sign * in[src];
    }
}

cd pauli_expect(const cd* amp, std::size_t dim, std::uint32_t flip,
                std::uint32_t sign_mask, cd y_phase) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t src = j ^ flip;
        const double sign = parity(static_cast<std::uint32_t>(src) & sign_mask) ? -1.0 : 1.0;
        const cd v = std::conj(amp[j]) * (y_phase * sign * amp[src]);
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

}  // namespace qpr::kern::serial
