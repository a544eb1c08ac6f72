#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qpr/statevec.hpp"

namespace qpr {

// Symmetric matrix of swap-test values q_ij in [-1, 1], unit diagonal.
class AttentionMatrix {
  public:
    explicit AttentionMatrix(int n_qubits);

    int n_qubits() const { return n_; }
    double at(int i, int j) const { return q_[idx(i, j)]; }
    // writes both (i, j) and (j, i); rejects entries outside [-1-1e-9, 1+1e-9]
    void set_pair(int i, int j, double v);

    // throws NumericalError unless symmetric with unit diagonal and bounded
    void validate() const;

  private:
    std::size_t idx(int i, int j) const;

    int n_;
    std::vector<double> q_;
};

// q_ij = Re <phi| SWAP_ij |phi>, one overlap per pair, lexicographic order.
// The imaginary residue of every overlap must stay below 1e-10.
AttentionMatrix attention_analytic(const StateVector& state);

// Appendix-style ancilla circuit per pair: H - CSWAP - H on an (n+1)-qubit
// register, q_ij = 2 P(0) - 1. With `shots`, P(0) is replaced by a seeded
// binomial sample mean.
AttentionMatrix attention_circuit(const StateVector& state,
                                  std::optional<long> shots = std::nullopt,
                                  std::uint64_t seed = 0);

// row-major upper triangle (q_01, q_02, ..., q_{n-2,n-1}); this ordering is
// part of the checkpoint contract.
std::vector<double> upper_triangle(const AttentionMatrix& m);

// heatmap CSV with a 1-based qubit-index header row
void write_attention_csv(std::ostream& os, const AttentionMatrix& m);
void write_attention_json(std::ostream& os, const AttentionMatrix& m, double h1,
                          double h2, const std::string& label);

}  // namespace qpr
