#include "qpr/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "qpr/attention.hpp"
#include "qpr/errors.hpp"
#include "qpr/rng.hpp"

namespace qpr {

ClassifierParams ClassifierParams::zeros(int feature_dim) {
    ClassifierParams p;
    p.feature_dim = feature_dim;
    p.weights.assign(static_cast<std::size_t>(3) * feature_dim, 0.0);
    return p;
}

void ClassifierParams::validate() const {
    if (feature_dim < 1 || weights.size() != static_cast<std::size_t>(3) * feature_dim)
        throw UsageError("ClassifierParams: weight shape mismatch");
}

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw UsageError("TrainConfig: learning_rate must be > 0");
    if (epochs < 1) throw UsageError("TrainConfig: epochs must be >= 1");
    if (layers < 1) throw UsageError("TrainConfig: layers must be >= 1");
}

void ModelCheckpoint::validate() const {
    if (theta.size() != static_cast<std::size_t>(param_count(n_qubits, layers)))
        throw CompatibilityError("checkpoint: theta length does not match 4*n*l");
    const int m = n_qubits * (n_qubits - 1) / 2;
    if (head.feature_dim != m)
        throw CompatibilityError("checkpoint: head width does not match n(n-1)/2");
    head.validate();
}

namespace {

std::array<double, 3> softmax(const std::array<double, 3>& z) {
    const double zmax = std::max({z[0], z[1], z[2]});
    std::array<double, 3> e{};
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        e[c] = std::exp(z[c] - zmax);
        sum += e[c];
    }
    for (int c = 0; c < 3; ++c) e[c] /= sum;
    return e;
}

}  // namespace

std::array<double, 3> classifier_forward(std::span<const double> features,
                                         const ClassifierParams& head) {
    head.validate();
    if (features.size() != static_cast<std::size_t>(head.feature_dim))
        throw UsageError("classifier_forward: feature length mismatch");
    std::array<double, 3> z = head.bias;
    for (int c = 0; c < 3; ++c) {
        const double* row = head.weights.data() + static_cast<std::size_t>(c) * head.feature_dim;
        double acc = 0.0;
        for (int k = 0; k < head.feature_dim; ++k) acc += row[k] * features[k];
        z[c] += acc;
    }
    return softmax(z);
}

double cross_entropy(const std::array<double, 3>& pred, PhaseLabel label) {
    const double p = std::max(pred[static_cast<int>(label)], 1e-12);
    return -std::log(p);
}

std::vector<double> model_features(const StateVector& raw_state, const AnsatzParams& params) {
    StateVector mapped = raw_state;
    apply_ansatz(mapped, params);
    return upper_triangle(attention_analytic(mapped));
}

SampleGradients loss_gradients(const StateVector& state, PhaseLabel label,
                               const AnsatzParams& params, const ClassifierParams& head) {
    const int n = params.n_qubits;
    const int m = n * (n - 1) / 2;
    if (head.feature_dim != m) throw UsageError("loss_gradients: head width mismatch");

    const std::vector<double> x = model_features(state, params);
    const std::array<double, 3> p = classifier_forward(x, head);

    std::array<double, 3> dz = p;
    dz[static_cast<int>(label)] -= 1.0;

    SampleGradients g;
    g.loss = cross_entropy(p, label);
    g.bias = dz;
    g.weights.resize(static_cast<std::size_t>(3) * m);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < m; ++k)
            g.weights[static_cast<std::size_t>(c) * m + k] = dz[c] * x[static_cast<std::size_t>(k)];

    // chain rule into the circuit: one adjoint pass with w_ij = dLoss/dq_ij
    PairWeights w(n);
    for (int k = 0; k < m; ++k) {
        double dxk = 0.0;
        for (int c = 0; c < 3; ++c) dxk += dz[c] * head.weights[static_cast<std::size_t>(c) * m + k];
        w.packed()[static_cast<std::size_t>(k)] = dxk;
    }
    g.theta = gradient_expectations(state, params, w);
    return g;
}

TrainResult train(const std::vector<TrainSample>& samples, const TrainConfig& config) {
    config.validate();
    if (samples.empty()) throw UsageError("train: empty training set");
    const int n = samples[0].state.n_qubits();
    for (const auto& s : samples)
        if (s.state.n_qubits() != n) throw UsageError("train: inconsistent sample sizes");

    bool seen[3] = {false, false, false};
    for (const auto& s : samples) seen[static_cast<int>(s.label)] = true;
    if (!(seen[0] && seen[1] && seen[2]))
        std::cerr << "warning: training set does not cover all three phases\n";

    const int m = n * (n - 1) / 2;
    AnsatzParams params = random_ansatz(n, config.layers, config.seed);
    ClassifierParams head = ClassifierParams::zeros(m);

    const std::size_t n_theta = params.theta.size();
    const std::size_t n_w = head.weights.size();
    const std::size_t n_all = n_theta + n_w + 3;

    std::vector<double> mom1(n_all, 0.0), mom2(n_all, 0.0);
    std::vector<double> grad(n_all);
    std::vector<SampleGradients> per_sample(samples.size());
    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(config.epochs));

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::size_t s = 0; s < samples.size(); ++s) {
            try {
                per_sample[s] = loss_gradients(samples[s].state, samples[s].label, params, head);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        // sequential accumulation in sample order keeps results independent
        // of the thread schedule
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const auto& g = per_sample[s];
            loss += g.loss;
            for (std::size_t k = 0; k < n_theta; ++k) grad[k] += g.theta[k];
            for (std::size_t k = 0; k < n_w; ++k) grad[n_theta + k] += g.weights[k];
            for (int c = 0; c < 3; ++c) grad[n_theta + n_w + c] += g.bias[c];
        }
        const double inv = 1.0 / static_cast<double>(samples.size());
        loss *= inv;
        for (auto& v : grad) v *= inv;

        if (!std::isfinite(loss)) {
            double theta_norm = 0.0, w_norm = 0.0;
            for (const double v : params.theta) theta_norm += v * v;
            for (const double v : head.weights) w_norm += v * v;
            std::size_t offender = 0;
            for (std::size_t s = 0; s < samples.size(); ++s)
                if (!std::isfinite(per_sample[s].loss)) {
                    offender = s;
                    break;
                }
            throw NumericalError(
                "train: non-finite loss at epoch " + std::to_string(epoch) + " (|theta|^2 " +
                std::to_string(theta_norm) + ", |W|^2 " + std::to_string(w_norm) +
                ", sample " + std::to_string(offender) + ")");
        }
        history.push_back(loss);

        // Adam step over the joint parameter vector
        const double t = static_cast<double>(epoch + 1);
        const double bc1 = 1.0 - std::pow(config.beta1, t);
        const double bc2 = 1.0 - std::pow(config.beta2, t);
        auto step = [&](std::size_t k, double& value) {
            mom1[k] = config.beta1 * mom1[k] + (1.0 - config.beta1) * grad[k];
            mom2[k] = config.beta2 * mom2[k] + (1.0 - config.beta2) * grad[k] * grad[k];
            value -= config.learning_rate * (mom1[k] / bc1) /
                     (std::sqrt(mom2[k] / bc2) + config.epsilon);
        };
        for (std::size_t k = 0; k < n_theta; ++k) step(k, params.theta[k]);
        for (std::size_t k = 0; k < n_w; ++k) step(n_theta + k, head.weights[k]);
        for (int c = 0; c < 3; ++c) step(n_theta + n_w + c, head.bias[c]);
    }

    TrainResult out;
    out.checkpoint.n_qubits = n;
    out.checkpoint.layers = config.layers;
    out.checkpoint.theta = std::move(params.theta);
    out.checkpoint.head = std::move(head);
    out.checkpoint.meta.seed = config.seed;
    out.checkpoint.meta.final_loss = history.back();
    out.checkpoint.meta.epochs = config.epochs;
    out.loss_history = std::move(history);
    return out;
}

std::pair<PhaseLabel, std::array<double, 3>> predict(const StateVector& raw_state,
                                                     const ModelCheckpoint& checkpoint) {
    checkpoint.validate();
    if (raw_state.n_qubits() != checkpoint.n_qubits)
        throw UsageError("predict: state size does not match checkpoint");
    const auto probs = classifier_forward(model_features(raw_state, checkpoint.ansatz()),
                                          checkpoint.head);
    int best = 0;
    for (int c = 1; c < 3; ++c)
        if (probs[c] > probs[best]) best = c;
    return {static_cast<PhaseLabel>(best), probs};
}

}  // namespace qpr
