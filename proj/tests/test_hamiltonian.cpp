#include <doctest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "qpr/errors.hpp"
#include "qpr/hamiltonian.hpp"

using namespace qpr;
using namespace qpr::test;

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(HamiltonianSpec{4}.validate(), UsageError);
    CHECK_THROWS_AS(HamiltonianSpec{1}.validate(), UsageError);
    CHECK_THROWS_AS(HamiltonianSpec{17}.validate(), UsageError);
    HamiltonianSpec{9}.validate();
}

TEST_CASE("term expansion") {
    const auto cluster_only = build_terms({3, 1.0, 0.0, 0.0});
    REQUIRE(cluster_only.size() == 1);
    CHECK(cluster_only[0].coeff == -1.0);
    CHECK(cluster_only[0].op.to_string() == "Z0 X1 Z2");

    const auto full = build_terms({9, 1.0, 0.5, -0.7});
    CHECK(full.size() == 7 + 9 + 8);

    // generic count (N-2) + N + (N-1) for nonzero parameters
    for (int n = 3; n <= 15; n += 2)
        CHECK(build_terms({n, 1.0, 0.1, 0.1}).size() ==
              static_cast<std::size_t>(3 * n - 3));
}

TEST_CASE("matvec against the dense Kronecker oracle") {
    for (int n = 3; n <= 6; n += 1) {
        const int sites = n % 2 == 1 ? n : n + 1;  // spec wants odd site counts
        if (sites > 6) break;
        const HamiltonianSpec spec{sites, 1.0, 0.37, -0.82};
        const auto terms = build_terms(spec);
        const MatC h = hamiltonian_matrix(sites, terms);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const auto v = random_state(sites, 40 + seed);
            const auto hv = matvec(terms, v);
            CHECK(max_amp_diff(hv, h * to_eigen(v)) < 1e-12);
        }
    }

    const auto v = random_state(3, 77);
    const auto zero = matvec({}, v);
    for (const auto& a : zero.amplitudes()) CHECK(a == cd{0, 0});
}

TEST_CASE("matvec is Hermitian") {
    const HamiltonianSpec spec{7, 1.0, 0.9, 0.4};
    const auto terms = build_terms(spec);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto u = random_state(7, 200 + seed);
        const auto v = random_state(7, 300 + seed);
        const cd uhv = inner_product(u, matvec(terms, v));
        const cd vhu = inner_product(v, matvec(terms, u));
        CHECK(std::abs(uhv - std::conj(vhu)) < 1e-10);
    }
}

TEST_CASE("cluster-point ground states") {
    const auto sol3 = ground_state_dense({3, 1.0, 0.0, 0.0});
    CHECK(sol3.energy == doctest::Approx(-1.0).epsilon(1e-12));

    const auto sol9 = ground_state_dense({9, 1.0, 0.0, 0.0});
    CHECK(sol9.energy == doctest::Approx(-7.0).epsilon(1e-12));
    CHECK(sol9.residual < 1e-8);
}

TEST_CASE("lanczos matches dense diagonalization") {
    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        const double h1 = rng.uniform(0.0, 1.6);
        const double h2 = rng.uniform(-1.6, 1.6);
        const HamiltonianSpec spec{9, 1.0, h1, h2};
        const auto dense = ground_state_dense(spec);
        const auto lanczos = ground_state_lanczos(spec, 1000 + trial);
        CHECK(std::abs(dense.energy - lanczos.energy) < 1e-8);
        CHECK(lanczos.residual < 1e-8);
    }
    for (int n : {5, 7}) {
        const HamiltonianSpec spec{n, 1.0, 0.39, -0.9};
        CHECK(std::abs(ground_state_dense(spec).energy -
                       ground_state_lanczos(spec, 7).energy) < 1e-8);
    }
}

TEST_CASE("lanczos is deterministic given the seed") {
    const HamiltonianSpec spec{9, 1.0, 0.39, 0.8};
    const auto a = ground_state_lanczos(spec, 99);
    const auto b = ground_state_lanczos(spec, 99);
    CHECK(a.energy == b.energy);
    CHECK(a.gap == b.gap);
    CHECK(max_amp_diff(a.state, b.state) == 0.0);
}

TEST_CASE("variational bound") {
    const HamiltonianSpec spec{7, 1.0, 0.6, -0.4};
    const auto terms = build_terms(spec);
    const auto sol = ground_state_dense(spec);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto psi = random_state(7, 800 + seed);
        const double rayleigh = inner_product(psi, matvec(terms, psi)).real();
        CHECK(rayleigh >= sol.energy - 1e-8);
    }
}

TEST_CASE("string order stabilizer identity") {
    for (int n : {3, 5, 7, 9}) {
        const auto sol = ground_state({n, 1.0, 0.0, 0.0}, 1);
        CHECK(std::abs(string_order(sol.state, n) - 1.0) < 1e-10);
        CHECK(sol.energy == doctest::Approx(static_cast<double>(-(n - 2))).epsilon(1e-12));
    }
}

TEST_CASE("string order in the deep paramagnet") {
    const auto sol = ground_state_dense({9, 1.0, 10.0, 0.0});
    CHECK(std::abs(string_order(sol.state, 9)) < 0.05);
}

TEST_CASE("string order bounds and domain") {
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        CHECK(std::abs(string_order(random_state(5, seed), 5)) <= 1.0);
    CHECK_THROWS_AS(string_order(random_state(4, 0), 4), UsageError);
}

TEST_CASE("nn_xx observable") {
    CHECK(nn_xx(StateVector::zero(5), 5) == doctest::Approx(0.0));

    auto plus = StateVector::zero(5);
    for (int q = 0; q < 5; ++q) plus.apply_h(q);
    CHECK(nn_xx(plus, 5) == doctest::Approx(1.0));

    // antiferromagnetic point: strong negative X-X alignment
    const auto sol = ground_state_dense({9, 1.0, 0.39, -1.5});
    CHECK(nn_xx(sol.state, 9) < -0.3);
}

TEST_CASE("phase labeling") {
    CHECK(label_point(0.95, 0.0) == PhaseLabel::SPT);
    CHECK(label_point(0.1, -0.8) == PhaseLabel::AFM);
    CHECK(label_point(0.1, 0.5) == PhaseLabel::PM);
    CHECK(label_point(-0.6, 0.0) == PhaseLabel::SPT);  // |<S>| rule
    CHECK_THROWS_AS(label_point(0.5, 0.0, 0.0, 0.3), UsageError);
    CHECK_THROWS_AS(label_point(0.5, 0.0, 0.5, 1.0), UsageError);

    // along h2 = 0 the label switches SPT -> PM near h1 = 1
    bool prev_spt = true;
    double switch_at = -1.0;
    for (int k = 0; k <= 32; ++k) {
        const double h1 = 0.05 * k;
        const auto sol = ground_state_dense({9, 1.0, h1, 0.0});
        const bool spt =
            label_point(string_order(sol.state, 9), nn_xx(sol.state, 9)) == PhaseLabel::SPT;
        if (prev_spt && !spt && switch_at < 0) switch_at = h1;
        prev_spt = spt;
    }
    CHECK(switch_at > 0.7);
    CHECK(switch_at < 1.3);
}

TEST_CASE("phase label string round trip") {
    for (const auto l : {PhaseLabel::AFM, PhaseLabel::SPT, PhaseLabel::PM})
        CHECK(phase_label_from_string(to_string(l)) == l);
    CHECK_THROWS_AS(phase_label_from_string("XY"), UsageError);
}

TEST_CASE("curvature peaks: flat and quadratic rows give nothing") {
    std::vector<double> xs, quad;
    for (int k = 0; k < 21; ++k) {
        xs.push_back(0.1 * k);
        quad.push_back(3.0 - 0.4 * xs.back() * xs.back());
    }
    CHECK(second_derivative_boundaries(xs, quad).empty());
    CHECK_THROWS_AS(second_derivative_boundaries({0, 1, 2}, {1, 2, 3}), UsageError);
}

TEST_CASE("curvature peaks find both crossovers on the h1 ~ 0.39 row") {
    std::vector<double> xs, energies;
    for (int k = 0; k <= 64; ++k) {
        const double h2 = -1.6 + 0.05 * k;
        xs.push_back(h2);
        energies.push_back(ground_state_dense({9, 1.0, 0.39, h2}).energy);
    }
    const auto peaks = second_derivative_boundaries(xs, energies);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0] < 0.0);
    CHECK(peaks[1] > 0.0);
}

TEST_CASE("curvature peak along the h2 = 0 cut") {
    // The open chain's edge modes dominate this direction: the N=9 peak
    // sits at h1 = 0.50, far below the thermodynamic critical point at 1
    // (the periodic chain would peak at 1.000). Frozen from the ED oracle,
    // cross-checked against an independent sparse diagonalization.
    std::vector<double> xs, energies;
    for (int k = 0; k <= 64; ++k) {
        const double h1 = 0.025 * k;
        xs.push_back(h1);
        energies.push_back(ground_state_dense({9, 1.0, h1, 0.0}).energy);
    }
    const auto peaks = second_derivative_boundaries(xs, energies);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0] == doctest::Approx(0.50).epsilon(0.05));
}

TEST_CASE("antiferromagnetic doublet: degenerate at h1 = 0, field-split for h1 > 0") {
    // odd N: the two X-Neel states carry total <sum X> = +-1, so the field
    // splits the doublet linearly in h1
    const auto symmetric = ground_state_dense({9, 1.0, 0.0, -1.5});
    CHECK(symmetric.gap < 1e-6);
    const auto split = ground_state_dense({9, 1.0, 0.1, -1.5});
    CHECK(split.gap > 0.1);
    CHECK(split.gap < 0.25);
    const auto cluster = ground_state_dense({9, 1.0, 0.0, 0.0});
    CHECK(cluster.gap < 1e-10);  // four-fold degenerate ground space
}
