#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpr/statevec.hpp"

namespace qpr {

// Cluster-Ising chain on an open boundary:
//   H = -J sum_i Z_i X_{i+1} Z_{i+2} - h1 sum_i X_i - h2 sum_i X_i X_{i+1}
struct HamiltonianSpec {
    int n_sites = 9;  // odd, 3..15
    double j = 1.0;
    double h1 = 0.0;
    double h2 = 0.0;

    void validate() const;
};

struct PauliTerm {
    double coeff;
    PauliString op;
};

// Open-boundary expansion; terms with an exactly-zero coefficient are pruned.
std::vector<PauliTerm> build_terms(const HamiltonianSpec& spec);

// H|v> as a sum of Pauli-string applications (matrix-free).
StateVector matvec(const std::vector<PauliTerm>& terms, const StateVector& v);

struct GroundSolution {
    double energy = 0.0;
    double gap = 0.0;  // to the first excited level; ~0 flags near-degeneracy
    StateVector state;
    int iterations = 0;
    double residual = 0.0;  // ||H psi - E psi||
};

struct LanczosOptions {
    int max_iterations = 350;
    int check_every = 5;
    double tol = 1e-10;           // convergence target for the residual estimate
    double residual_limit = 1e-8; // hard limit; above this we throw
};

// Dense symmetric eigendecomposition; exact reference path for n_sites <= 10.
GroundSolution ground_state_dense(const HamiltonianSpec& spec);

// Matrix-free Lanczos with full reorthogonalization from a seeded random
// start vector. Works in real arithmetic (the Hamiltonian has no Y factors).
GroundSolution ground_state_lanczos(const HamiltonianSpec& spec, std::uint64_t seed,
                                    const LanczosOptions& opts = {});

// Dense for n_sites <= 10, Lanczos above.
GroundSolution ground_state(const HamiltonianSpec& spec, std::uint64_t seed);

// <Z_1 X_2 X_4 ... X_{N-1} Z_N> (1-based), defined for odd N.
double string_order(const StateVector& state, int n_sites);

// (1/(N-1)) sum_i <X_i X_{i+1}>
double nn_xx(const StateVector& state, int n_sites);

enum class PhaseLabel : int { AFM = 0, SPT = 1, PM = 2 };

std::string to_string(PhaseLabel label);
PhaseLabel phase_label_from_string(const std::string& s);

// SPT if |<S>| >= tau_s, else AFM if nn_xx <= -tau_a, else PM.
PhaseLabel label_point(double string_order, double nn_xx, double tau_s = 0.5,
                       double tau_a = 0.3);

struct BoundaryOptions {
    double prominence_frac = 0.10;  // relative to the curvature range of the row
    int max_peaks = 2;
};

// Crossover estimates from a row of ground energies on a uniform parameter
// grid. The ground energy is concave in any linear coupling, so the signal
// peaks in -d2E (curvature magnitude); returns the locations of its local
// maxima whose prominence clears the threshold, strongest first capped at
// max_peaks, sorted by position.
std::vector<double> second_derivative_boundaries(const std::vector<double>& xs,
                                                 const std::vector<double>& energies,
                                                 const BoundaryOptions& opts = {});

}  // namespace qpr
