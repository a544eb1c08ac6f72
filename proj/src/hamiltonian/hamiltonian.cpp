#include "qpr/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qpr/errors.hpp"

namespace qpr {

void HamiltonianSpec::validate() const {
    if (n_sites < 3 || n_sites > 15 || n_sites % 2 == 0)
        throw UsageError("HamiltonianSpec: n_sites must be odd and in [3, 15], got " +
                         std::to_string(n_sites));
    if (!std::isfinite(j) || !std::isfinite(h1) || !std::isfinite(h2))
        throw UsageError("HamiltonianSpec: non-finite coupling");
}

std::vector<PauliTerm> build_terms(const HamiltonianSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    std::vector<PauliTerm> terms;
    if (spec.j != 0.0)
        for (int i = 0; i + 2 < n; ++i)
            terms.push_back({-spec.j, PauliString{{i, Axis::Z}, {i + 1, Axis::X}, {i + 2, Axis::Z}}});
    if (spec.h1 != 0.0)
        for (int i = 0; i < n; ++i)
            terms.push_back({-spec.h1, PauliString{{i, Axis::X}}});
    if (spec.h2 != 0.0)
        for (int i = 0; i + 1 < n; ++i)
            terms.push_back({-spec.h2, PauliString{{i, Axis::X}, {i + 1, Axis::X}}});
    return terms;
}

StateVector matvec(const std::vector<PauliTerm>& terms, const StateVector& v) {
    StateVector out = StateVector::from_amplitudes(
        v.n_qubits(), std::vector<cd>(v.dim(), cd{0, 0}));
    for (const auto& t : terms) {
        if (t.op.max_site() >= v.n_qubits())
            throw UsageError("matvec: term site out of range");
        const cd scale = t.coeff * t.op.y_phase();
        if (default_backend() == Backend::serial)
            kern::serial::pauli_axpy(out.data(), v.data(), v.dim(), t.op.flip_mask(),
                                     t.op.sign_mask(), scale);
        else
            kern::par::pauli_axpy(out.data(), v.data(), v.dim(), t.op.flip_mask(),
                                  t.op.sign_mask(), scale);
    }
    return out;
}

GroundSolution ground_state_dense(const HamiltonianSpec& spec) {
    spec.validate();
    const auto terms = build_terms(spec);
    const std::size_t dim = std::size_t{1} << spec.n_sites;

    // All terms are X/Z products with real coefficients: H is real symmetric.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<long>(dim), static_cast<long>(dim));
    for (const auto& t : terms) {
        const std::uint32_t flip = t.op.flip_mask();
        const std::uint32_t sign = t.op.sign_mask();
        for (std::size_t col = 0; col < dim; ++col) {
            const double s =
                __builtin_parity(static_cast<std::uint32_t>(col) & sign) ? -1.0 : 1.0;
            h(static_cast<long>(col ^ flip), static_cast<long>(col)) += t.coeff * s;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("dense eigensolver failed", 0.0);

    const double energy = solver.eigenvalues()(0);
    const double gap = solver.eigenvalues()(1) - energy;
    std::vector<cd> amp(dim);
    for (std::size_t i = 0; i < dim; ++i)
        amp[i] = cd{solver.eigenvectors()(static_cast<long>(i), 0), 0.0};

    GroundSolution sol;
    sol.energy = energy;
    sol.gap = gap;
    sol.state = StateVector::from_amplitudes(spec.n_sites, std::move(amp));
    sol.iterations = 0;

    const StateVector hv = matvec(terms, sol.state);
    double r2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        r2 += std::norm(hv.amplitudes()[i] - energy * sol.state.amplitudes()[i]);
    sol.residual = std::sqrt(r2);
    return sol;
}

GroundSolution ground_state(const HamiltonianSpec& spec, std::uint64_t seed) {
    if (spec.n_sites <= 10) return ground_state_dense(spec);
    return ground_state_lanczos(spec, seed);
}

double string_order(const StateVector& state, int n_sites) {
    if (n_sites % 2 == 0) throw UsageError("string_order: site count must be odd");
    if (state.n_qubits() != n_sites)
        throw UsageError("string_order: state size does not match n_sites");
    std::vector<PauliString::Factor> factors;
    factors.emplace_back(0, Axis::Z);
    for (int site = 1; site <= n_sites - 2; site += 2) factors.emplace_back(site, Axis::X);
    factors.emplace_back(n_sites - 1, Axis::Z);
    return expect_pauli(state, PauliString(std::move(factors)));
}

double nn_xx(const StateVector& state, int n_sites) {
    if (state.n_qubits() != n_sites)
        throw UsageError("nn_xx: state size does not match n_sites");
    double acc = 0.0;
    for (int i = 0; i + 1 < n_sites; ++i)
        acc += expect_pauli(state, PauliString{{i, Axis::X}, {i + 1, Axis::X}});
    return acc / (n_sites - 1);
}

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::AFM: return "AFM";
        case PhaseLabel::SPT: return "SPT";
        case PhaseLabel::PM: return "PM";
    }
    throw UsageError("unknown phase label");
}

PhaseLabel phase_label_from_string(const std::string& s) {
    if (s == "AFM") return PhaseLabel::AFM;
    if (s == "SPT") return PhaseLabel::SPT;
    if (s == "PM") return PhaseLabel::PM;
    throw UsageError("unknown phase label '" + s + "'");
}

PhaseLabel label_point(double string_order, double nn_xx, double tau_s, double tau_a) {
    if (tau_s <= 0.0 || tau_s >= 1.0 || tau_a <= 0.0 || tau_a >= 1.0)
        throw UsageError("label_point: thresholds must lie in (0, 1)");
    if (std::abs(string_order) >= tau_s) return PhaseLabel::SPT;
    if (nn_xx <= -tau_a) return PhaseLabel::AFM;
    return PhaseLabel::PM;
}

std::vector<double> second_derivative_boundaries(const std::vector<double>& xs,
                                                 const std::vector<double>& energies,
                                                 const BoundaryOptions& opts) {
    const std::size_t m = xs.size();
    if (m < 5) throw UsageError("second_derivative_boundaries: need at least 5 grid points");
    if (energies.size() != m)
        throw UsageError("second_derivative_boundaries: grid/energy size mismatch");
    const double dx = xs[1] - xs[0];
    for (std::size_t i = 1; i + 1 < m; ++i)
        if (std::abs((xs[i + 1] - xs[i]) - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
            throw UsageError("second_derivative_boundaries: grid must be uniform");

    // curvature magnitude: ground energy is concave in the coupling
    std::vector<double> g(m - 2);
    for (std::size_t i = 1; i + 1 < m; ++i)
        g[i - 1] = -(energies[i - 1] - 2.0 * energies[i] + energies[i + 1]) / (dx * dx);

    double gmin = g[0], gmax = g[0];
    for (const double v : g) {
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
    }
    const double threshold = opts.prominence_frac * (gmax - gmin);

    struct Peak {
        std::size_t idx;
        double prominence;
    };
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        if (!(g[i] > g[i - 1] && g[i] > g[i + 1])) continue;
        double left_min = g[i];
        for (std::size_t k = i; k-- > 0;) {
            if (g[k] > g[i]) break;
            left_min = std::min(left_min, g[k]);
        }
        double right_min = g[i];
        for (std::size_t k = i + 1; k < g.size(); ++k) {
            if (g[k] > g[i]) break;
            right_min = std::min(right_min, g[k]);
        }
        const double prominence = g[i] - std::max(left_min, right_min);
        if (prominence > threshold && prominence > 1e-12)
            peaks.push_back({i, prominence});
    }

    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.prominence > b.prominence; });
    if (static_cast<int>(peaks.size()) > opts.max_peaks) peaks.resize(opts.max_peaks);

    std::vector<double> locations;
    locations.reserve(peaks.size());
    for (const auto& p : peaks) locations.push_back(xs[p.idx + 1]);
    std::sort(locations.begin(), locations.end());
    return locations;
}

}  // namespace qpr
