#pragma once

#include <string>
#include <vector>

#include "qpr/attention.hpp"

namespace qpr {

// Weakest-coupled qubit: argmin_k sum_{j != k} q[k][j], ties toward the
// smallest index.
int reference_qubit(const AttentionMatrix& m);

enum class Side { before, after };
std::string to_string(Side s);

// Which side of the reference qubit holds more qubits (ties -> after).
Side pick_side(int reference, int n_qubits);

struct ContrastResult {
    double h1 = 0.0;  // filled by sweep drivers
    double h2 = 0.0;
    int reference_qubit = 0;
    double q_near = 0.0;
    double q_long = 0.0;
    double value = 0.0;  // (q_near - q_long) / (q_near + q_long)
};

ContrastResult contrast(const AttentionMatrix& m);

struct CorrelationProfile {
    int reference_qubit = 0;
    Side side = Side::after;
    int n_sub = 0;               // submatrix dimension
    std::vector<double> f;       // f[r-1] averages the n_sub - r entries at distance r
    double xi = 0.0;
    double fit_slope = 0.0;
    int fit_points_used = 0;
    bool non_decaying = false;
};

// f(r) over the larger side of the reference qubit, xi from a least-squares
// line through ln f(r). Slopes above -1e-12 are reported as non-decaying
// with xi = 1/max(|slope|, 1e-12), which caps xi at 1e12.
CorrelationProfile correlation_profile(const AttentionMatrix& m);

}  // namespace qpr
