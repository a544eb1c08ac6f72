#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace qpr {

using cd = std::complex<double>;

inline constexpr int kMaxQubits = 16;

// ---------------------------------------------------------------------------
// Pauli strings
// ---------------------------------------------------------------------------

enum class Axis : std::uint8_t { X, Y, Z };

// Product of single-site Pauli factors, sorted by site, no repeated sites.
// Site 0 is the least-significant bit of the basis index; this convention
// is used everywhere in the project.
class PauliString {
  public:
    using Factor = std::pair<int, Axis>;

    PauliString() = default;  // identity
    PauliString(std::initializer_list<Factor> factors);
    explicit PauliString(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    int max_site() const;

    // P|i> = phase(i) |i ^ flip_mask()>, with
    // phase(i) = y_phase() * (-1)^popcount(i & sign_mask())
    std::uint32_t flip_mask() const { return flip_; }
    std::uint32_t sign_mask() const { return sign_; }
    cd y_phase() const;
    int y_count() const { return y_count_; }

    std::string to_string() const;

  private:
    void finalize();

    std::vector<Factor> factors_;
    std::uint32_t flip_ = 0;
    std::uint32_t sign_ = 0;
    int y_count_ = 0;
};

// ---------------------------------------------------------------------------
// Kernels: serial reference and OpenMP-parallel implementations
// ---------------------------------------------------------------------------

struct Mat2 {
    cd m00, m01, m10, m11;
};

Mat2 ry_matrix(double theta);
Mat2 rx_matrix(double theta);
Mat2 h_matrix();

// Both namespaces implement the same contract. `serial` is the plain
// reference used by tests and as the benchmark baseline; `par` carries the
// OpenMP pragmas and only forks above an internal size threshold.
#define QPR_KERNEL_DECLS                                                          \
    void apply_1q(cd* amp, std::size_t dim, int qubit, const Mat2& u);            \
    void apply_ctrl_1q(cd* amp, std::size_t dim, int control, int target,         \
                       const Mat2& u);                                            \
    /* |1><1|_c (x) u_t; zeroes the control-0 block (generator application) */    \
    void apply_ctrl_proj_1q(cd* amp, std::size_t dim, int control, int target,    \
                            const Mat2& u);                                       \
    void apply_swap_bits(cd* amp, std::size_t dim, int i, int j);                 \
    void apply_cswap(cd* amp, std::size_t dim, int control, int a, int b);        \
    cd inner(const cd* a, const cd* b, std::size_t dim);                          \
    double prob_zero(const cd* amp, std::size_t dim, int qubit);                  \
    double norm_sq(const cd* amp, std::size_t dim);                               \
    /* <a|SWAP_ij|a> without materializing the permuted copy */                   \
    cd swap_overlap(const cd* amp, std::size_t dim, int i, int j);                \
    /* out += scale * phase(j^flip) * in[j^flip], sign from sign_mask */          \
    void pauli_axpy(cd* out, const cd* in, std::size_t dim, std::uint32_t flip,   \
                    std::uint32_t sign_mask, cd scale);                           \
    /* sum_j conj(a[j]) * (P a)[j]; caller checks the imaginary residue */        \
    cd pauli_expect(const cd* amp, std::size_t dim, std::uint32_t flip,           \
                    std::uint32_t sign_mask, cd y_phase);

namespace kern::serial {
QPR_KERNEL_DECLS
}
namespace kern::par {
QPR_KERNEL_DECLS
}
#undef QPR_KERNEL_DECLS

enum class Backend { serial, parallel };

Backend default_backend();
void set_default_backend(Backend b);

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

// Dense amplitude vector over 2^n basis states, up to 16 qubits.
// Mutating members require exclusive access; const access is shareable.
class StateVector {
  public:
    StateVector() = default;  // empty sentinel; valid() is false
    static StateVector zero(int n_qubits);
    static StateVector from_amplitudes(int n_qubits, std::vector<cd> amplitudes);

    bool valid() const { return n_ > 0; }
    int n_qubits() const { return n_; }
    std::size_t dim() const { return amp_.size(); }
    std::span<const cd> amplitudes() const { return amp_; }
    std::span<cd> amplitudes() { return amp_; }
    const cd* data() const { return amp_.data(); }
    cd* data() { return amp_.data(); }

    void apply_ry(int qubit, double theta);
    void apply_rx(int qubit, double theta);
    void apply_crx(int control, int target, double theta);
    void apply_h(int qubit);
    void apply_cswap(int control, int a, int b);
    void swap_qubits(int i, int j);

    double prob_qubit_zero(int qubit) const;
    double norm() const;
    // Throws NumericalError when the norm drifted more than `tol` from 1.
    void check_norm(double tol = 1e-8) const;

    // CSV rows (index, real, imag) at 17 significant digits.
    void dump_csv(std::ostream& os) const;

  private:
    StateVector(int n, std::vector<cd> amp) : n_(n), amp_(std::move(amp)) {}
    void check_qubit(int q) const;

    int n_ = 0;
    std::vector<cd> amp_;
};

cd inner_product(const StateVector& a, const StateVector& b);

// <s|P|s>; real within 1e-12 for Hermitian P, clamped to [-1, 1].
double expect_pauli(const StateVector& s, const PauliString& p);

// <s|SWAP_ij|s> as a complex overlap (no copy).
cd swap_overlap(const StateVector& s, int i, int j);

// Backend-dispatched raw applications for circuit builders; `u` need not be
// unitary (generator sweeps pass scaled Paulis through these).
void apply_1q(StateVector& s, int qubit, const Mat2& u);
void apply_ctrl_1q(StateVector& s, int control, int target, const Mat2& u);
void apply_ctrl_proj_1q(StateVector& s, int control, int target, const Mat2& u);

}  // namespace qpr
