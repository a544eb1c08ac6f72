#pragma once

#include <cstdint>
#include <vector>

#include "qpr/statevec.hpp"

namespace qpr {

// 4*n*l parameters per Fig-ure: each layer applies four sublayers
//   A: RY on every qubit
//   B: CRX on ring edges, control i -> target (i+1) mod n
//   C: RY on every qubit
//   D: CRX on ring edges, control (i+1) mod n -> target i
// theta is flattened by (layer, sublayer, qubit).
struct AnsatzParams {
    int n_qubits = 0;
    int layers = 1;
    std::vector<double> theta;

    void validate() const;
    static std::size_t flat_index(int n_qubits, int layer, int sublayer, int qubit);
};

int param_count(int n_qubits, int layers);

// theta ~ U[-0.1, 0.1], seeded; keeps the initial map near identity.
AnsatzParams random_ansatz(int n_qubits, int layers, std::uint64_t seed);

void apply_ansatz(StateVector& state, const AnsatzParams& params);

// Symmetric pair weights for the observable O = sum_{i<j} w_ij SWAP_ij,
// packed as the row-major upper triangle.
class PairWeights {
  public:
    explicit PairWeights(int n_qubits);

    int n_qubits() const { return n_; }
    std::size_t size() const { return w_.size(); }
    double at(int i, int j) const { return w_[pair_index(n_, i, j)]; }
    void set(int i, int j, double v) { w_[pair_index(n_, i, j)] = v; }
    const std::vector<double>& packed() const { return w_; }
    std::vector<double>& packed() { return w_; }

    // index of (i, j), i < j, in row-major upper-triangle order
    static std::size_t pair_index(int n_qubits, int i, int j);

  private:
    int n_;
    std::vector<double> w_;
};

// out = O |in>
void apply_swap_observable(const StateVector& in, const PairWeights& weights,
                           StateVector& out);

// <psi| O |psi> for the feature-mapped state psi = U(theta)|input>.
double swap_observable_expectation(const StateVector& input, const AnsatzParams& params,
                                   const PairWeights& weights);

// d/d theta_k of <psi(theta)| O |psi(theta)> by one reverse adjoint sweep;
// exact on the simulator. The CRX generator has eigenvalues {0, +-1/2}, so
// the two-term parameter-shift rule does not apply here.
std::vector<double> gradient_expectations(const StateVector& input,
                                          const AnsatzParams& params,
                                          const PairWeights& weights);

}  // namespace qpr
