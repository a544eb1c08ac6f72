#include "qpr/attention.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qpr/errors.hpp"
#include "qpr/rng.hpp"

namespace qpr {

AttentionMatrix::AttentionMatrix(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 2) throw UsageError("AttentionMatrix: need at least 2 qubits");
    q_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) q_[idx(i, i)] = 1.0;
}

std::size_t AttentionMatrix::idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw UsageError("AttentionMatrix: index out of range");
    return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
}

void AttentionMatrix::set_pair(int i, int j, double v) {
    if (i == j) throw UsageError("AttentionMatrix: diagonal is fixed to 1");
    if (!(std::abs(v) <= 1.0 + 1e-9))
        throw NumericalError("AttentionMatrix: entry " + std::to_string(v) +
                             " outside [-1, 1]");
    q_[idx(i, j)] = v;
    q_[idx(j, i)] = v;
}

void AttentionMatrix::validate() const {
    for (int i = 0; i < n_; ++i) {
        if (q_[idx(i, i)] != 1.0)
            throw NumericalError("AttentionMatrix: diagonal entry is not 1");
        for (int j = i + 1; j < n_; ++j) {
            if (q_[idx(i, j)] != q_[idx(j, i)])
                throw NumericalError("AttentionMatrix: asymmetric entries");
            if (std::abs(q_[idx(i, j)]) > 1.0 + 1e-9)
                throw NumericalError("AttentionMatrix: off-diagonal out of bounds");
        }
    }
}

AttentionMatrix attention_analytic(const StateVector& state) {
    const int n = state.n_qubits();
    if (n < 2) throw UsageError("attention_analytic: need at least 2 qubits");
    AttentionMatrix m(n);

    struct Pair {
        int i, j;
    };
    std::vector<Pair> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});

    std::vector<double> values(pairs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        try {
            const cd ov = swap_overlap(state, pairs[p].i, pairs[p].j);
            if (!(std::abs(ov.imag()) <= 1e-10))
                throw NumericalError("attention_analytic: overlap imaginary residue " +
                                     std::to_string(ov.imag()));
            values[p] = ov.real();
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t p = 0; p < pairs.size(); ++p)
        m.set_pair(pairs[p].i, pairs[p].j, values[p]);
    m.validate();
    return m;
}

AttentionMatrix attention_circuit(const StateVector& state, std::optional<long> shots,
                                  std::uint64_t seed) {
    const int n = state.n_qubits();
    if (n < 2) throw UsageError("attention_circuit: need at least 2 qubits");
    if (n + 1 > kMaxQubits)
        throw UsageError("attention_circuit: ancilla register would exceed " +
                         std::to_string(kMaxQubits) + " qubits");
    if (shots && *shots < 1) throw UsageError("attention_circuit: shots must be positive");

    const int ancilla = n;
    const std::size_t dim = state.dim();
    AttentionMatrix m(n);

    struct Pair {
        int i, j;
        std::size_t index;
    };
    std::vector<Pair> pairs;
    std::size_t pair_index = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j, pair_index++});

    std::vector<double> values(pairs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        try {
            // ancilla |0> block carries the input state, |1> block is empty
            std::vector<cd> ext(dim * 2, cd{0, 0});
            for (std::size_t k = 0; k < dim; ++k) ext[k] = state.amplitudes()[k];
            StateVector reg = StateVector::from_amplitudes(n + 1, std::move(ext));
            reg.apply_h(ancilla);
            reg.apply_cswap(ancilla, pairs[p].i, pairs[p].j);
            reg.apply_h(ancilla);
            double p0 = reg.prob_qubit_zero(ancilla);
            if (shots) {
                Rng rng(derive_seed(seed, pairs[p].index));
                p0 = static_cast<double>(rng.binomial(*shots, p0)) /
                     static_cast<double>(*shots);
            }
            values[p] = 2.0 * p0 - 1.0;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (const auto& pr : pairs) m.set_pair(pr.i, pr.j, values[pr.index]);
    m.validate();
    return m;
}

std::vector<double> upper_triangle(const AttentionMatrix& m) {
    const int n = m.n_qubits();
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) v.push_back(m.at(i, j));
    return v;
}

void write_attention_csv(std::ostream& os, const AttentionMatrix& m) {
    const int n = m.n_qubits();
    os << "qubit";
    for (int j = 1; j <= n; ++j) os << ',' << j;
    os << '\n';
    char buf[40];
    for (int i = 0; i < n; ++i) {
        os << (i + 1);
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, ",%.12g", m.at(i, j));
            os << buf;
        }
        os << '\n';
    }
}

void write_attention_json(std::ostream& os, const AttentionMatrix& m, double h1,
                          double h2, const std::string& label) {
    nlohmann::ordered_json doc;
    doc["n_qubits"] = m.n_qubits();
    doc["h1"] = h1;
    doc["h2"] = h2;
    doc["label"] = label;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < m.n_qubits(); ++i) {
        std::vector<double> row;
        for (int j = 0; j < m.n_qubits(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    doc["q"] = rows;
    os << doc.dump(2) << '\n';
}

}  // namespace qpr
