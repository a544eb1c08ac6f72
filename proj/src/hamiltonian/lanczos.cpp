// Matrix-free Lanczos for the cluster-Ising ground state. The Hamiltonian
// contains only X/Z factors with real coefficients, so the whole iteration
// runs in real arithmetic; the result is lifted to a complex StateVector at
// the end.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qpr/errors.hpp"
#include "qpr/hamiltonian.hpp"
#include "qpr/reduce.hpp"
#include "qpr/rng.hpp"

namespace qpr {

namespace {

struct TermMask {
    std::uint32_t flip;
    std::uint32_t sign;
    double coeff;
};

constexpr std::size_t kParCutoff = std::size_t{1} << 13;

double rdot(const double* a, const double* b, std::size_t n) {
    return reduce_sum(n, n >= kParCutoff, [&](std::size_t i) { return a[i] * b[i]; });
}

void raxpy(double alpha, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= kParCutoff)
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rscale(double alpha, double* x, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= kParCutoff)
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

// out[j] = sum_t c_t * sign_t(j^f_t) * in[j^f_t]; one pass over the output,
// gathering from the (cache-resident) input per term.
void hmatvec(const std::vector<TermMask>& terms, const double* in, double* out,
             std::size_t dim) {
#pragma omp parallel for schedule(static) if (dim >= kParCutoff)
    for (std::size_t j = 0; j < dim; ++j) {
        double acc = 0.0;
        for (const auto& t : terms) {
            const std::size_t src = j ^ t.flip;
            const double s =
                __builtin_parity(static_cast<std::uint32_t>(src) & t.sign) ? -1.0 : 1.0;
            acc += t.coeff * s * in[src];
        }
        out[j] = acc;
    }
}

struct Tridiag {
    double theta0, theta1;
    Eigen::VectorXd ground;  // Ritz coefficients of the lowest pair
};

Tridiag solve_tridiag(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) {
            t(i, i + 1) = beta[static_cast<std::size_t>(i)];
            t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Tridiag out;
    out.theta0 = es.eigenvalues()(0);
    out.theta1 = k > 1 ? es.eigenvalues()(1) : es.eigenvalues()(0);
    out.ground = es.eigenvectors().col(0);
    return out;
}

}  // namespace

GroundSolution ground_state_lanczos(const HamiltonianSpec& spec, std::uint64_t seed,
                                    const LanczosOptions& opts) {
    spec.validate();
    const auto pauli_terms = build_terms(spec);
    std::vector<TermMask> terms;
    terms.reserve(pauli_terms.size());
    for (const auto& t : pauli_terms) {
        if (t.op.y_count() != 0)
            throw UsageError("ground_state_lanczos: expected a Y-free Hamiltonian");
        terms.push_back({t.op.flip_mask(), t.op.sign_mask(), t.coeff});
    }

    const std::size_t dim = std::size_t{1} << spec.n_sites;
    Rng rng(seed);
    std::vector<std::vector<double>> basis;  // stored for full reorthogonalization
    basis.emplace_back(dim);
    for (std::size_t i = 0; i < dim; ++i) basis[0][i] = rng.uniform(-1.0, 1.0);
    rscale(1.0 / std::sqrt(rdot(basis[0].data(), basis[0].data(), dim)), basis[0].data(), dim);

    std::vector<double> alpha, beta;
    std::vector<double> w(dim);
    bool breakdown = false;
    double theta1_prev = 0.0;
    bool ground_converged = false;

    int k = 0;
    for (; k < opts.max_iterations; ++k) {
        const auto& vk = basis[static_cast<std::size_t>(k)];
        hmatvec(terms, vk.data(), w.data(), dim);
        if (k > 0) raxpy(-beta[static_cast<std::size_t>(k - 1)],
                         basis[static_cast<std::size_t>(k - 1)].data(), w.data(), dim);
        const double a = rdot(vk.data(), w.data(), dim);
        alpha.push_back(a);
        raxpy(-a, vk.data(), w.data(), dim);

        // full reorthogonalization against every stored vector
        for (const auto& u : basis) raxpy(-rdot(u.data(), w.data(), dim), u.data(), w.data(), dim);

        const double b = std::sqrt(rdot(w.data(), w.data(), dim));
        if (b < 1e-13) {
            breakdown = true;  // Krylov space exhausted: spectrum captured exactly
            break;
        }
        beta.push_back(b);

        if ((k + 1) % opts.check_every == 0 && k >= 1) {
            const Tridiag td = solve_tridiag(alpha, beta);
            const double residual_est =
                std::abs(b * td.ground(static_cast<long>(alpha.size()) - 1));
            const bool theta1_stable = std::abs(td.theta1 - theta1_prev) < 1e-7;
            theta1_prev = td.theta1;
            if (residual_est < opts.tol) {
                ground_converged = true;
                if (theta1_stable) break;
            }
        }

        basis.emplace_back(dim);
        auto& vnext = basis.back();
#pragma omp parallel for schedule(static) if (dim >= kParCutoff)
        for (std::size_t i = 0; i < dim; ++i) vnext[i] = w[i] / b;
    }

    const Tridiag td = solve_tridiag(alpha, beta);

    // Ritz vector
    std::vector<double> x(dim, 0.0);
    for (std::size_t i = 0; i < alpha.size(); ++i)
        raxpy(td.ground(static_cast<long>(i)), basis[i].data(), x.data(), dim);
    rscale(1.0 / std::sqrt(rdot(x.data(), x.data(), dim)), x.data(), dim);

    hmatvec(terms, x.data(), w.data(), dim);
    raxpy(-td.theta0, x.data(), w.data(), dim);
    const double residual = std::sqrt(rdot(w.data(), w.data(), dim));

    if (!breakdown && !ground_converged && residual > opts.residual_limit)
        throw ConvergenceError("Lanczos did not converge after " +
                                   std::to_string(alpha.size()) + " iterations",
                               residual);
    if (residual > opts.residual_limit)
        throw ConvergenceError("Lanczos residual above limit", residual);

    std::vector<cd> amp(dim);
    for (std::size_t i = 0; i < dim; ++i) amp[i] = cd{x[i], 0.0};

    GroundSolution sol;
    sol.energy = td.theta0;
    sol.gap = td.theta1 - td.theta0;
    sol.state = StateVector::from_amplitudes(spec.n_sites, std::move(amp));
    sol.iterations = static_cast<int>(alpha.size());
    sol.residual = residual;
    return sol;
}

}  // namespace qpr
