#pragma once

// Dense-matrix oracle for the statevector kernels: every operator is built
// from explicit 2x2 factors and Kronecker products, independent of the
// strided kernel code paths under test.

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qpr/hamiltonian.hpp"
#include "qpr/rng.hpp"
#include "qpr/statevec.hpp"

namespace qpr::test {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

inline MatC kron(const MatC& a, const MatC& b) {
    MatC out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline MatC eye2() { return MatC::Identity(2, 2); }

inline MatC pauli_x() {
    MatC m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline MatC pauli_y() {
    MatC m(2, 2);
    m << cd{0, 0}, cd{0, -1}, cd{0, 1}, cd{0, 0};
    return m;
}

inline MatC pauli_z() {
    MatC m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline MatC proj0() {
    MatC m = MatC::Zero(2, 2);
    m(0, 0) = 1;
    return m;
}

inline MatC proj1() {
    MatC m = MatC::Zero(2, 2);
    m(1, 1) = 1;
    return m;
}

inline MatC mat_ry(double theta) {
    MatC m(2, 2);
    m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    return m;
}

inline MatC mat_rx(double theta) {
    MatC m(2, 2);
    m << cd{std::cos(theta / 2), 0}, cd{0, -std::sin(theta / 2)},
        cd{0, -std::sin(theta / 2)}, cd{std::cos(theta / 2), 0};
    return m;
}

inline MatC mat_h() {
    MatC m(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
}

// site 0 is the least-significant bit: the full operator is
// M_{n-1} (x) ... (x) M_0
inline MatC embed(int n, const std::vector<std::pair<int, MatC>>& factors) {
    MatC full = MatC::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        MatC m = eye2();
        for (const auto& [site, factor] : factors)
            if (site == q) m = factor;
        full = kron(full, m);
    }
    return full;
}

// SWAP_ij = (II + XX + YY + ZZ) / 2, an algebraic route with no index games
inline MatC swap_matrix(int n, int i, int j) {
    const auto dim = Eigen::Index(1) << n;
    MatC out = MatC::Identity(dim, dim);
    out += embed(n, {{i, pauli_x()}, {j, pauli_x()}});
    out += embed(n, {{i, pauli_y()}, {j, pauli_y()}});
    out += embed(n, {{i, pauli_z()}, {j, pauli_z()}});
    return out / 2.0;
}

inline MatC cswap_matrix(int n, int c, int a, int b) {
    return embed(n, {{c, proj0()}}) + embed(n, {{c, proj1()}}) * swap_matrix(n, a, b);
}

inline MatC crx_matrix(int n, int c, int t, double theta) {
    return embed(n, {{c, proj0()}}) + embed(n, {{c, proj1()}}) * embed(n, {{t, mat_rx(theta)}});
}

inline MatC pauli_string_matrix(int n, const PauliString& p) {
    std::vector<std::pair<int, MatC>> factors;
    for (const auto& [site, axis] : p.factors()) {
        if (axis == Axis::X) factors.emplace_back(site, pauli_x());
        else if (axis == Axis::Y) factors.emplace_back(site, pauli_y());
        else factors.emplace_back(site, pauli_z());
    }
    return embed(n, factors);
}

inline MatC hamiltonian_matrix(int n, const std::vector<PauliTerm>& terms) {
    const auto dim = Eigen::Index(1) << n;
    MatC h = MatC::Zero(dim, dim);
    for (const auto& t : terms) h += t.coeff * pauli_string_matrix(n, t.op);
    return h;
}

inline VecC to_eigen(const StateVector& s) {
    VecC v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t k = 0; k < s.dim(); ++k)
        v(static_cast<Eigen::Index>(k)) = s.amplitudes()[k];
    return v;
}

inline StateVector from_eigen(int n, const VecC& v) {
    std::vector<cd> amp(static_cast<std::size_t>(v.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k) amp[static_cast<std::size_t>(k)] = v(k);
    return StateVector::from_amplitudes(n, std::move(amp));
}

inline StateVector random_state(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cd> amp(std::size_t{1} << n);
    double norm_sq = 0.0;
    for (auto& a : amp) {
        a = cd{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        norm_sq += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amp) a *= inv;
    return StateVector::from_amplitudes(n, std::move(amp));
}

inline double max_amp_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k)
        worst = std::max(worst, std::abs(a.amplitudes()[k] - b.amplitudes()[k]));
    return worst;
}

inline double max_amp_diff(const StateVector& a, const VecC& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k)
        worst = std::max(worst,
                         std::abs(a.amplitudes()[k] - b(static_cast<Eigen::Index>(k))));
    return worst;
}

}  // namespace qpr::test
