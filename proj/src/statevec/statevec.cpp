#include "qpr/statevec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qpr/errors.hpp"

namespace qpr {

// ---------------------------------------------------------------------------
// PauliString
// ---------------------------------------------------------------------------

PauliString::PauliString(std::initializer_list<Factor> factors)
    : factors_(factors) {
    finalize();
}

PauliString::PauliString(std::vector<Factor> factors) : factors_(std::move(factors)) {
    finalize();
}

void PauliString::finalize() {
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        const auto [site, axis] = factors_[k];
        if (site < 0 || site >= kMaxQubits)
            throw UsageError("PauliString: site " + std::to_string(site) + " out of range");
        if (k > 0 && factors_[k - 1].first == site)
            throw UsageError("PauliString: repeated site " + std::to_string(site));
        const auto bit = std::uint32_t{1} << site;
        switch (axis) {
            case Axis::X: flip_ |= bit; break;
            case Axis::Y: flip_ |= bit; sign_ |= bit; ++y_count_; break;
            case Axis::Z: sign_ |= bit; break;
        }
    }
}

int PauliString::max_site() const {
    return factors_.empty() ? -1 : factors_.back().first;
}

cd PauliString::y_phase() const {
    static const cd phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return phases[y_count_ % 4];
}

std::string PauliString::to_string() const {
    if (factors_.empty()) return "I";
    std::string s;
    for (const auto& [site, axis] : factors_) {
        s += (axis == Axis::X ? 'X' : axis == Axis::Y ? 'Y' : 'Z');
        s += std::to_string(site);
        s += ' ';
    }
    s.pop_back();
    return s;
}

// ---------------------------------------------------------------------------
// Gate matrices
// ---------------------------------------------------------------------------

Mat2 ry_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
}

Mat2 rx_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {{c, 0}, {0, -s}, {0, -s}, {c, 0}};
}

Mat2 h_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{r, 0}, {r, 0}, {r, 0}, {-r, 0}};
}

// ---------------------------------------------------------------------------
// Backend dispatch
// ---------------------------------------------------------------------------

namespace {
std::atomic<Backend> g_backend{Backend::parallel};
}

Backend default_backend() { return g_backend.load(std::memory_order_relaxed); }
void set_default_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

namespace {

inline void k_apply_1q(cd* a, std::size_t d, int q, const Mat2& u) {
    if (default_backend() == Backend::serial) kern::serial::apply_1q(a, d, q, u);
    else kern::par::apply_1q(a, d, q, u);
}
inline void k_apply_ctrl_1q(cd* a, std::size_t d, int c, int t, const Mat2& u) {
    if (default_backend() == Backend::serial) kern::serial::apply_ctrl_1q(a, d, c, t, u);
    else kern::par::apply_ctrl_1q(a, d, c, t, u);
}
inline void k_swap_bits(cd* a, std::size_t d, int i, int j) {
    if (default_backend() == Backend::serial) kern::serial::apply_swap_bits(a, d, i, j);
    else kern::par::apply_swap_bits(a, d, i, j);
}
inline void k_cswap(cd* a, std::size_t d, int c, int i, int j) {
    if (default_backend() == Backend::serial) kern::serial::apply_cswap(a, d, c, i, j);
    else kern::par::apply_cswap(a, d, c, i, j);
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

StateVector StateVector::zero(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw UsageError("StateVector: qubit count " + std::to_string(n_qubits) +
                         " outside [1, " + std::to_string(kMaxQubits) + "]");
    std::vector<cd> amp(std::size_t{1} << n_qubits, cd{0, 0});
    amp[0] = cd{1, 0};
    return {n_qubits, std::move(amp)};
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<cd> amplitudes) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw UsageError("StateVector: qubit count out of range");
    if (amplitudes.size() != (std::size_t{1} << n_qubits))
        throw UsageError("StateVector: amplitude count does not match qubit count");
    return {n_qubits, std::move(amplitudes)};
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_)
        throw UsageError("StateVector: qubit index " + std::to_string(q) +
                         " out of range for " + std::to_string(n_) + " qubits");
}

void StateVector::apply_ry(int qubit, double theta) {
    check_qubit(qubit);
    k_apply_1q(amp_.data(), dim(), qubit, ry_matrix(theta));
}

void StateVector::apply_rx(int qubit, double theta) {
    check_qubit(qubit);
    k_apply_1q(amp_.data(), dim(), qubit, rx_matrix(theta));
}

void StateVector::apply_crx(int control, int target, double theta) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw UsageError("apply_crx: control equals target");
    k_apply_ctrl_1q(amp_.data(), dim(), control, target, rx_matrix(theta));
}

void StateVector::apply_h(int qubit) {
    check_qubit(qubit);
    k_apply_1q(amp_.data(), dim(), qubit, h_matrix());
}

void StateVector::apply_cswap(int control, int a, int b) {
    check_qubit(control);
    check_qubit(a);
    check_qubit(b);
    if (control == a || control == b || a == b)
        throw UsageError("apply_cswap: indices must be pairwise distinct");
    k_cswap(amp_.data(), dim(), control, a, b);
}

void StateVector::swap_qubits(int i, int j) {
    check_qubit(i);
    check_qubit(j);
    if (i == j) throw UsageError("swap_qubits: indices must differ");
    k_swap_bits(amp_.data(), dim(), i, j);
}

double StateVector::prob_qubit_zero(int qubit) const {
    check_qubit(qubit);
    if (default_backend() == Backend::serial)
        return kern::serial::prob_zero(amp_.data(), dim(), qubit);
    return kern::par::prob_zero(amp_.data(), dim(), qubit);
}

double StateVector::norm() const {
    const double n2 = default_backend() == Backend::serial
                          ? kern::serial::norm_sq(amp_.data(), dim())
                          : kern::par::norm_sq(amp_.data(), dim());
    return std::sqrt(n2);
}

void StateVector::check_norm(double tol) const {
    const double n = norm();
    if (!(std::abs(n - 1.0) <= tol))  // negated form so NaN trips the check
        throw NumericalError("StateVector norm drifted to " + std::to_string(n));
}

void StateVector::dump_csv(std::ostream& os) const {
    os << "index,real,imag\n";
    char buf[96];
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, amp_[i].real(),
                      amp_[i].imag());
        os << buf;
    }
}

cd inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw UsageError("inner_product: qubit counts differ");
    if (default_backend() == Backend::serial)
        return kern::serial::inner(a.data(), b.data(), a.dim());
    return kern::par::inner(a.data(), b.data(), a.dim());
}

double expect_pauli(const StateVector& s, const PauliString& p) {
    if (p.max_site() >= s.n_qubits())
        throw UsageError("expect_pauli: Pauli site " + std::to_string(p.max_site()) +
                         " out of range");
    const cd v = default_backend() == Backend::serial
                     ? kern::serial::pauli_expect(s.data(), s.dim(), p.flip_mask(),
                                                  p.sign_mask(), p.y_phase())
                     : kern::par::pauli_expect(s.data(), s.dim(), p.flip_mask(),
                                               p.sign_mask(), p.y_phase());
    if (!(std::abs(v.imag()) <= 1e-12))
        throw NumericalError("expect_pauli: imaginary residue " + std::to_string(v.imag()));
    return std::clamp(v.real(), -1.0, 1.0);
}

cd swap_overlap(const StateVector& s, int i, int j) {
    if (i < 0 || j < 0 || i >= s.n_qubits() || j >= s.n_qubits())
        throw UsageError("swap_overlap: qubit index out of range");
    if (default_backend() == Backend::serial)
        return kern::serial::swap_overlap(s.data(), s.dim(), i, j);
    return kern::par::swap_overlap(s.data(), s.dim(), i, j);
}

void apply_1q(StateVector& s, int qubit, const Mat2& u) {
    k_apply_1q(s.data(), s.dim(), qubit, u);
}

void apply_ctrl_1q(StateVector& s, int control, int target, const Mat2& u) {
    k_apply_ctrl_1q(s.data(), s.dim(), control, target, u);
}

void apply_ctrl_proj_1q(StateVector& s, int control, int target, const Mat2& u) {
    if (default_backend() == Backend::serial)
        kern::serial::apply_ctrl_proj_1q(s.data(), s.dim(), control, target, u);
    else
        kern::par::apply_ctrl_proj_1q(s.data(), s.dim(), control, target, u);
}

}  // namespace qpr
