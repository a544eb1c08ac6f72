#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "helpers.hpp"
#include "qpr/ansatz.hpp"
#include "qpr/attention.hpp"
#include "qpr/errors.hpp"
#include "qpr/hamiltonian.hpp"

using namespace qpr;
using namespace qpr::test;

TEST_CASE("analytic attention on simple states") {
    // exchange-symmetric product state
    const auto zeros = attention_analytic(StateVector::zero(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(zeros.at(i, j) == doctest::Approx(1.0));

    // two-qubit singlet: antisymmetric under exchange
    const double r = 1.0 / std::sqrt(2.0);
    const auto singlet = attention_analytic(
        StateVector::from_amplitudes(2, {cd{0, 0}, cd{r, 0}, cd{-r, 0}, cd{0, 0}}));
    CHECK(singlet.at(0, 1) == doctest::Approx(-1.0));
    CHECK(singlet.at(0, 0) == 1.0);

    // |01>: orthogonal to its swapped image
    const auto prod = attention_analytic(
        StateVector::from_amplitudes(2, {cd{0, 0}, cd{1, 0}, cd{0, 0}, cd{0, 0}}));
    CHECK(prod.at(0, 1) == doctest::Approx(0.0));

    // uniform superposition is exchange symmetric
    auto plus = StateVector::zero(5);
    for (int q = 0; q < 5; ++q) plus.apply_h(q);
    const auto uniform = attention_analytic(plus);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) CHECK(uniform.at(i, j) == doctest::Approx(1.0));
}

TEST_CASE("circuit mode equals analytic mode") {
    for (int n = 2; n <= 8; ++n) {
        const auto psi = random_state(n, 60 + n);
        const auto exact = attention_analytic(psi);
        const auto circuit = attention_circuit(psi);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(circuit.at(i, j) - exact.at(i, j)) < 1e-10);
    }

    // also on a feature-mapped cluster ground state
    auto mapped = ground_state_dense({5, 1.0, 0.4, -0.3}).state;
    apply_ansatz(mapped, random_ansatz(5, 1, 17));
    const auto exact = attention_analytic(mapped);
    const auto circuit = attention_circuit(mapped);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            CHECK(std::abs(circuit.at(i, j) - exact.at(i, j)) < 1e-10);
}

TEST_CASE("circuit mode on |0...0> measures P(0) = 1") {
    const auto m = attention_circuit(StateVector::zero(6));
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) CHECK(m.at(i, j) == doctest::Approx(1.0));
}

TEST_CASE("shot sampling stays within five standard errors") {
    const long shots = 10000;
    const auto psi = random_state(5, 2718);
    const auto exact = attention_analytic(psi);
    const auto sampled = attention_circuit(psi, shots, 314159);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            const double p0 = (exact.at(i, j) + 1.0) / 2.0;
            const double se = 2.0 * std::sqrt(std::max(p0 * (1 - p0), 1e-12) /
                                              static_cast<double>(shots));
            const double allowed = std::min(std::max(5.0 * se, 1e-4), 0.05);
            CHECK(std::abs(sampled.at(i, j) - exact.at(i, j)) <= allowed);
        }
}

TEST_CASE("shot sampling is seed-deterministic") {
    const auto psi = random_state(4, 999);
    const auto a = attention_circuit(psi, 500, 7);
    const auto b = attention_circuit(psi, 500, 7);
    const auto c = attention_circuit(psi, 500, 8);
    bool any_diff = false;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            CHECK(a.at(i, j) == b.at(i, j));
            if (a.at(i, j) != c.at(i, j)) any_diff = true;
        }
    CHECK(any_diff);
}

TEST_CASE("register size limit") {
    const auto big = random_state(16, 5);
    CHECK_THROWS_AS(attention_circuit(big), UsageError);
    CHECK_THROWS_AS(attention_circuit(random_state(4, 5), 0), UsageError);
}

TEST_CASE("upper triangle ordering") {
    AttentionMatrix m(3);
    m.set_pair(0, 1, 0.1);
    m.set_pair(0, 2, 0.2);
    m.set_pair(1, 2, 0.3);
    const auto v = upper_triangle(m);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 0.1);
    CHECK(v[1] == 0.2);
    CHECK(v[2] == 0.3);

    const auto big = attention_analytic(random_state(9, 22));
    CHECK(upper_triangle(big).size() == 36);

    const auto ones = upper_triangle(attention_analytic(StateVector::zero(4)));
    for (const double q : ones) CHECK(q == doctest::Approx(1.0));
}

TEST_CASE("produced matrices are symmetric, unit-diagonal, bounded") {
    for (int trial = 0; trial < 8; ++trial) {
        auto state = ground_state_dense({7, 1.0, 0.2 * trial, 0.4 * trial - 1.4}).state;
        apply_ansatz(state, random_ansatz(7, 1, 40 + trial));
        const auto m = attention_analytic(state);
        m.validate();
        for (int i = 0; i < 7; ++i) {
            CHECK(m.at(i, i) == 1.0);
            for (int j = 0; j < 7; ++j) {
                CHECK(m.at(i, j) == m.at(j, i));
                CHECK(std::abs(m.at(i, j)) <= 1.0 + 1e-9);
            }
        }
    }
}

TEST_CASE("matrix entry validation") {
    AttentionMatrix m(3);
    CHECK_THROWS_AS(m.set_pair(0, 0, 0.5), UsageError);
    CHECK_THROWS_AS(m.set_pair(0, 1, 1.5), NumericalError);
    CHECK_THROWS_AS(AttentionMatrix(1), UsageError);
}

TEST_CASE("heatmap exports") {
    const auto m = attention_analytic(random_state(3, 66));
    std::ostringstream csv;
    write_attention_csv(csv, m);
    const std::string csv_text = csv.str();
    CHECK(csv_text.rfind("qubit,1,2,3\n", 0) == 0);
    CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') == 4);

    std::ostringstream js;
    write_attention_json(js, m, 0.4, -0.2, "SPT");
    const std::string js_text = js.str();
    CHECK(js_text.find("\"label\": \"SPT\"") != std::string::npos);
    CHECK(js_text.find("\"h1\": 0.4") != std::string::npos);
}
