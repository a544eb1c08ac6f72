#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qpr/attention.hpp"
#include "qpr/classifier.hpp"
#include "qpr/errors.hpp"

using namespace qpr;
using namespace qpr::test;

namespace {

// loss as a plain function of every parameter, for finite differences
double pipeline_loss(const StateVector& state, PhaseLabel label,
                     const AnsatzParams& params, const ClassifierParams& head) {
    StateVector mapped = state;
    apply_ansatz(mapped, params);
    const auto features = upper_triangle(attention_analytic(mapped));
    return cross_entropy(classifier_forward(features, head), label);
}

ClassifierParams random_head(int n, std::uint64_t seed) {
    Rng rng(seed);
    auto head = ClassifierParams::zeros(n * (n - 1) / 2);
    for (auto& w : head.weights) w = rng.uniform(-0.8, 0.8);
    for (auto& b : head.bias) b = rng.uniform(-0.5, 0.5);
    return head;
}

std::vector<TrainSample> toy_dataset(int n, int per_phase) {
    // ground states drawn from deep regions of each phase
    std::vector<TrainSample> samples;
    Rng rng(4242);
    for (int k = 0; k < per_phase; ++k) {
        const double jitter = 0.05 * static_cast<double>(k);
        samples.push_back({ground_state_dense({n, 1.0, 0.1 + jitter, -1.4}).state,
                           PhaseLabel::AFM});
        samples.push_back({ground_state_dense({n, 1.0, 0.1 + jitter, 0.0}).state,
                           PhaseLabel::SPT});
        samples.push_back({ground_state_dense({n, 1.0, 1.4 + jitter, 0.6}).state,
                           PhaseLabel::PM});
    }
    return samples;
}

}  // namespace

TEST_CASE("softmax head basics") {
    auto head = ClassifierParams::zeros(6);
    const std::vector<double> x{0.2, -0.1, 0.4, 0.9, -0.6, 0.3};
    const auto uniform = classifier_forward(x, head);
    for (int c = 0; c < 3; ++c) CHECK(uniform[c] == doctest::Approx(1.0 / 3));

    head.bias = {10.0, 0.0, 0.0};
    const auto dominant = classifier_forward(x, head);
    CHECK(dominant[0] > 0.9999);

    // softmax shift invariance
    auto shifted = random_head(4, 5);
    const auto base = classifier_forward(x, shifted);
    for (auto& b : shifted.bias) b += 3.7;
    const auto moved = classifier_forward(x, shifted);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(base[c] - moved[c]) < 1e-12);

    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        CHECK(base[c] > 0.0);
        total += base[c];
    }
    CHECK(std::abs(total - 1.0) < 1e-12);

    CHECK_THROWS_AS(classifier_forward(std::vector<double>{1.0}, head), UsageError);
}

TEST_CASE("cross entropy") {
    CHECK(cross_entropy({1.0, 0.0, 0.0}, PhaseLabel::AFM) == doctest::Approx(0.0));
    CHECK(cross_entropy({1.0 / 3, 1.0 / 3, 1.0 / 3}, PhaseLabel::SPT) ==
          doctest::Approx(std::log(3.0)));
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        std::array<double, 3> p{rng.uniform01(), rng.uniform01(), rng.uniform01()};
        const double z = p[0] + p[1] + p[2];
        for (auto& v : p) v /= z;
        CHECK(cross_entropy(p, PhaseLabel::PM) >= 0.0);
    }
    // clamped at 1e-12
    CHECK(cross_entropy({0.0, 1.0, 0.0}, PhaseLabel::AFM) ==
          doctest::Approx(-std::log(1e-12)));
}

TEST_CASE("end-to-end gradients match finite differences") {
    const int n = 4;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto state = random_state(n, 5000 + trial);
        const auto label = static_cast<PhaseLabel>(trial % 3);
        auto params = random_ansatz(n, 1, 6000 + trial);
        auto head = random_head(n, 7000 + trial);

        const auto g = loss_gradients(state, label, params, head);

        const double step = 1e-5;
        for (std::size_t k = 0; k < params.theta.size(); ++k) {
            const double saved = params.theta[k];
            params.theta[k] = saved + step;
            const double plus = pipeline_loss(state, label, params, head);
            params.theta[k] = saved - step;
            const double minus = pipeline_loss(state, label, params, head);
            params.theta[k] = saved;
            const double fd = (plus - minus) / (2 * step);
            worst = std::max(worst,
                             std::abs(g.theta[k] - fd) / std::max(1e-3, std::abs(fd)));
        }
        for (std::size_t k = 0; k < head.weights.size(); ++k) {
            const double saved = head.weights[k];
            head.weights[k] = saved + step;
            const double plus = pipeline_loss(state, label, params, head);
            head.weights[k] = saved - step;
            const double minus = pipeline_loss(state, label, params, head);
            head.weights[k] = saved;
            const double fd = (plus - minus) / (2 * step);
            worst = std::max(worst,
                             std::abs(g.weights[k] - fd) / std::max(1e-3, std::abs(fd)));
        }
        for (int c = 0; c < 3; ++c) {
            const double saved = head.bias[c];
            head.bias[c] = saved + step;
            const double plus = pipeline_loss(state, label, params, head);
            head.bias[c] = saved - step;
            const double minus = pipeline_loss(state, label, params, head);
            head.bias[c] = saved;
            const double fd = (plus - minus) / (2 * step);
            worst = std::max(worst,
                             std::abs(g.bias[c] - fd) / std::max(1e-3, std::abs(fd)));
        }
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("gradients vanish at a confidently correct prediction") {
    const int n = 4;
    const auto state = random_state(n, 321);
    auto head = ClassifierParams::zeros(n * (n - 1) / 2);
    head.bias = {50.0, 0.0, 0.0};  // one-hot on AFM
    const auto g = loss_gradients(state, PhaseLabel::AFM, random_ansatz(n, 1, 1), head);
    for (const double v : g.weights) CHECK(std::abs(v) < 1e-10);
    for (const double v : g.bias) CHECK(std::abs(v) < 1e-10);
    for (const double v : g.theta) CHECK(std::abs(v) < 1e-10);
    CHECK(g.loss < 1e-10);
}

TEST_CASE("training reduces the loss on a small 9-qubit set") {
    const auto samples = toy_dataset(9, 7);  // 21 samples
    TrainConfig cfg;
    cfg.epochs = 10;
    cfg.seed = 11;
    const auto result = train(samples, cfg);
    REQUIRE(result.loss_history.size() == 10);
    CHECK(result.loss_history.back() < result.loss_history.front());
    for (const double l : result.loss_history) CHECK(std::isfinite(l));
}

TEST_CASE("training is deterministic and duplication-invariant") {
    const auto samples = toy_dataset(5, 2);
    TrainConfig cfg;
    cfg.epochs = 25;
    cfg.seed = 77;

    const auto a = train(samples, cfg);
    const auto b = train(samples, cfg);
    CHECK(a.checkpoint.theta == b.checkpoint.theta);
    CHECK(a.checkpoint.head.weights == b.checkpoint.head.weights);
    CHECK(a.checkpoint.head.bias == b.checkpoint.head.bias);
    CHECK(a.loss_history == b.loss_history);

    // duplicating the full set leaves the full-batch mean gradient unchanged
    auto doubled = samples;
    doubled.insert(doubled.end(), samples.begin(), samples.end());
    const auto c = train(doubled, cfg);
    for (std::size_t k = 0; k < a.checkpoint.theta.size(); ++k)
        CHECK(std::abs(a.checkpoint.theta[k] - c.checkpoint.theta[k]) < 1e-9);
}

TEST_CASE("permuting the training set leaves gradients unchanged") {
    const auto samples = toy_dataset(5, 2);
    auto permuted = samples;
    std::rotate(permuted.begin(), permuted.begin() + 2, permuted.end());

    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.seed = 3;
    const auto a = train(samples, cfg);
    const auto b = train(permuted, cfg);
    // one full-batch step from identical init: averaged gradients agree up to
    // summation order
    for (std::size_t k = 0; k < a.checkpoint.theta.size(); ++k)
        CHECK(std::abs(a.checkpoint.theta[k] - b.checkpoint.theta[k]) < 1e-12);
}

TEST_CASE("train validates inputs and warns on missing phases") {
    TrainConfig cfg;
    CHECK_THROWS_AS(train({}, cfg), UsageError);
    cfg.learning_rate = -1;
    CHECK_THROWS_AS(train(toy_dataset(5, 1), cfg), UsageError);
}

TEST_CASE("corrupt amplitudes abort training with a numerical-health error") {
    // the norm check inside the feature map trips before the loss can go NaN
    auto samples = toy_dataset(5, 1);
    auto bad = samples[0].state;
    bad.amplitudes()[0] = cd{std::numeric_limits<double>::quiet_NaN(), 0};
    samples.push_back({bad, PhaseLabel::AFM});
    TrainConfig cfg;
    cfg.epochs = 3;
    CHECK_THROWS_AS(train(samples, cfg), NumericalError);
    try {
        train(samples, cfg);
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("norm") != std::string::npos);
    }
}

TEST_CASE("prediction is invariant under a global phase") {
    const auto samples = toy_dataset(5, 2);
    TrainConfig cfg;
    cfg.epochs = 30;
    cfg.seed = 5;
    const auto result = train(samples, cfg);

    const auto state = ground_state_dense({5, 1.0, 0.3, 0.1}).state;
    auto rotated = state;
    const cd phase = std::polar(1.0, 1.234);
    for (auto& a : rotated.amplitudes()) a *= phase;

    const auto [l1, p1] = predict(state, result.checkpoint);
    const auto [l2, p2] = predict(rotated, result.checkpoint);
    CHECK(l1 == l2);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(p1[c] - p2[c]) < 1e-12);
}

TEST_CASE("trained model separates deep-phase representatives") {
    const auto samples = toy_dataset(9, 7);
    TrainConfig cfg;
    cfg.epochs = 120;
    cfg.seed = 1;
    const auto result = train(samples, cfg);

    const auto spt = predict(ground_state_dense({9, 1.0, 0.0, 0.0}).state, result.checkpoint);
    CHECK(spt.first == PhaseLabel::SPT);
    const auto pm = predict(ground_state_dense({9, 1.0, 1.6, 0.0}).state, result.checkpoint);
    CHECK(pm.first == PhaseLabel::PM);
    const auto afm =
        predict(ground_state_dense({9, 1.0, 0.05, -1.55}).state, result.checkpoint);
    CHECK(afm.first == PhaseLabel::AFM);
}

TEST_CASE("checkpoint validation") {
    ModelCheckpoint c;
    c.n_qubits = 4;
    c.layers = 1;
    c.theta.assign(16, 0.0);
    c.head = ClassifierParams::zeros(6);
    c.validate();
    c.theta.pop_back();
    CHECK_THROWS_AS(c.validate(), CompatibilityError);
}
