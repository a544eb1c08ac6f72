#include "qpr/ansatz.hpp"

#include <cmath>

#include "qpr/errors.hpp"
#include "qpr/rng.hpp"

namespace qpr {

namespace {

struct Gate {
    enum class Kind { ry, crx } kind;
    int a;  // RY qubit, or CRX control
    int b;  // CRX target
    std::size_t param;
};

std::vector<Gate> build_gates(int n, int layers) {
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(param_count(n, layers)));
    for (int layer = 0; layer < layers; ++layer) {
        for (int q = 0; q < n; ++q)
            gates.push_back({Gate::Kind::ry, q, -1, AnsatzParams::flat_index(n, layer, 0, q)});
        for (int i = 0; i < n; ++i)
            gates.push_back({Gate::Kind::crx, i, (i + 1) % n,
                             AnsatzParams::flat_index(n, layer, 1, i)});
        for (int q = 0; q < n; ++q)
            gates.push_back({Gate::Kind::ry, q, -1, AnsatzParams::flat_index(n, layer, 2, q)});
        for (int i = 0; i < n; ++i)
            gates.push_back({Gate::Kind::crx, (i + 1) % n, i,
                             AnsatzParams::flat_index(n, layer, 3, i)});
    }
    return gates;
}

void apply_gate(StateVector& s, const Gate& g, double theta) {
    if (g.kind == Gate::Kind::ry)
        s.apply_ry(g.a, theta);
    else
        s.apply_crx(g.a, g.b, theta);
}

// G such that U(theta) = exp(-i theta G): Y/2 for RY, |1><1| (x) X/2 for CRX.
void apply_generator(StateVector& s, const Gate& g) {
    if (g.kind == Gate::Kind::ry) {
        const Mat2 half_y{{0, 0}, {0, -0.5}, {0, 0.5}, {0, 0}};
        apply_1q(s, g.a, half_y);
    } else {
        const Mat2 half_x{{0, 0}, {0.5, 0}, {0.5, 0}, {0, 0}};
        apply_ctrl_proj_1q(s, g.a, g.b, half_x);
    }
}

}  // namespace

int param_count(int n_qubits, int layers) {
    if (n_qubits < 2 || layers < 1)
        throw UsageError("param_count: need n_qubits >= 2 and layers >= 1");
    return 4 * n_qubits * layers;
}

void AnsatzParams::validate() const {
    if (theta.size() != static_cast<std::size_t>(param_count(n_qubits, layers)))
        throw UsageError("AnsatzParams: theta length " + std::to_string(theta.size()) +
                         " does not equal 4*n*l = " +
                         std::to_string(param_count(n_qubits, layers)));
}

std::size_t AnsatzParams::flat_index(int n_qubits, int layer, int sublayer, int qubit) {
    return (static_cast<std::size_t>(layer) * 4 + static_cast<std::size_t>(sublayer)) *
               static_cast<std::size_t>(n_qubits) +
           static_cast<std::size_t>(qubit);
}

AnsatzParams random_ansatz(int n_qubits, int layers, std::uint64_t seed) {
    AnsatzParams p;
    p.n_qubits = n_qubits;
    p.layers = layers;
    p.theta.resize(static_cast<std::size_t>(param_count(n_qubits, layers)));
    Rng rng(seed);
    for (auto& t : p.theta) t = rng.uniform(-0.1, 0.1);
    return p;
}

void apply_ansatz(StateVector& state, const AnsatzParams& params) {
    params.validate();
    if (state.n_qubits() != params.n_qubits)
        throw UsageError("apply_ansatz: state/parameter qubit count mismatch");
    for (const auto& g : build_gates(params.n_qubits, params.layers))
        apply_gate(state, g, params.theta[g.param]);
    state.check_norm();
}

PairWeights::PairWeights(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 2) throw UsageError("PairWeights: need at least 2 qubits");
    w_.assign(static_cast<std::size_t>(n_qubits) * (n_qubits - 1) / 2, 0.0);
}

std::size_t PairWeights::pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j) throw UsageError("PairWeights: bad pair index");
    // row-major upper triangle: rows i contribute (n-1-i) entries
    const auto si = static_cast<std::size_t>(i);
    return si * static_cast<std::size_t>(n) - si * (si + 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
}

void apply_swap_observable(const StateVector& in, const PairWeights& weights,
                           StateVector& out) {
    if (in.n_qubits() != weights.n_qubits())
        throw UsageError("apply_swap_observable: qubit count mismatch");
    const int n = in.n_qubits();
    struct Pair {
        int i, j;
        double w;
    };
    std::vector<Pair> active;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (weights.at(i, j) != 0.0) active.push_back({i, j, weights.at(i, j)});

    out = StateVector::from_amplitudes(n, std::vector<cd>(in.dim(), cd{0, 0}));
    const cd* src = in.data();
    cd* dst = out.data();
    const std::size_t dim = in.dim();
#pragma omp parallel for schedule(static) if (dim >= (std::size_t{1} << 13))
    for (std::size_t m = 0; m < dim; ++m) {
        cd acc{0, 0};
        for (const auto& p : active) {
            const std::size_t bi = (m >> p.i) & 1u;
            const std::size_t bj = (m >> p.j) & 1u;
            const std::size_t src_idx =
                bi == bj ? m : m ^ ((std::size_t{1} << p.i) | (std::size_t{1} << p.j));
            acc += p.w * src[src_idx];
        }
        dst[m] = acc;
    }
}

double swap_observable_expectation(const StateVector& input, const AnsatzParams& params,
                                   const PairWeights& weights) {
    StateVector psi = input;
    apply_ansatz(psi, params);
    StateVector opsi;
    apply_swap_observable(psi, weights, opsi);
    return inner_product(psi, opsi).real();
}

std::vector<double> gradient_expectations(const StateVector& input,
                                          const AnsatzParams& params,
                                          const PairWeights& weights) {
    params.validate();
    if (input.n_qubits() != params.n_qubits)
        throw UsageError("gradient_expectations: qubit count mismatch");
    if (weights.n_qubits() != params.n_qubits)
        throw UsageError("gradient_expectations: weight dimension mismatch");

    const auto gates = build_gates(params.n_qubits, params.layers);
    std::vector<double> grad(params.theta.size(), 0.0);

    // forward pass
    StateVector ket = input;
    for (const auto& g : gates) apply_gate(ket, g, params.theta[g.param]);

    StateVector bra;
    apply_swap_observable(ket, weights, bra);

    // reverse sweep: grad_k = 2 Im <bra_k| G_k |ket_k>
    StateVector mu;
    for (std::size_t k = gates.size(); k-- > 0;) {
        const auto& g = gates[k];
        mu = ket;
        apply_generator(mu, g);
        grad[g.param] = 2.0 * inner_product(bra, mu).imag();
        apply_gate(ket, g, -params.theta[g.param]);
        apply_gate(bra, g, -params.theta[g.param]);
    }
    return grad;
}

}  // namespace qpr
