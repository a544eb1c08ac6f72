#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpr/ansatz.hpp"
#include "qpr/hamiltonian.hpp"
#include "qpr/statevec.hpp"

namespace qpr {

// Single fully connected layer, 3 logits over the m = n(n-1)/2 attention
// features, softmax on top.
struct ClassifierParams {
    int feature_dim = 0;
    std::vector<double> weights;  // 3 x m, row-major
    std::array<double, 3> bias{};

    static ClassifierParams zeros(int feature_dim);
    void validate() const;
};

std::array<double, 3> classifier_forward(std::span<const double> features,
                                         const ClassifierParams& head);

// -log pred[label], prediction clamped below at 1e-12
double cross_entropy(const std::array<double, 3>& pred, PhaseLabel label);

struct TrainConfig {
    double learning_rate = 0.01;
    int epochs = 200;
    std::uint64_t seed = 1;
    int layers = 1;
    double beta1 = 0.9;   // first-moment decay
    double beta2 = 0.999; // second-moment decay
    double epsilon = 1e-8;

    void validate() const;
};

struct TrainMeta {
    std::uint64_t seed = 0;
    std::string config_digest;   // digest of the producing run config
    std::string dataset_digest;  // dataset identity the model was trained on
    double final_loss = 0.0;
    int epochs = 0;
};

inline constexpr std::array<const char*, 3> kLabelOrder = {"AFM", "SPT", "PM"};

struct ModelCheckpoint {
    int schema_version = 1;
    int n_qubits = 0;
    int layers = 1;
    std::vector<double> theta;
    ClassifierParams head;
    TrainMeta meta;

    AnsatzParams ansatz() const { return {n_qubits, layers, theta}; }
    void validate() const;
};

struct TrainSample {
    StateVector state;
    PhaseLabel label;
};

struct SampleGradients {
    std::vector<double> theta;
    std::vector<double> weights;
    std::array<double, 3> bias{};
    double loss = 0.0;
};

// Full forward + backward for one sample: closed-form softmax/cross-entropy
// backprop for (W, b), one adjoint sweep for theta with pair weights
// w_ij = dLoss/dq_ij.
SampleGradients loss_gradients(const StateVector& state, PhaseLabel label,
                               const AnsatzParams& params, const ClassifierParams& head);

struct TrainResult {
    ModelCheckpoint checkpoint;
    std::vector<double> loss_history;  // mean loss per epoch, pre-update
};

// Deterministic full-batch Adam over (theta, W, b).
TrainResult train(const std::vector<TrainSample>& samples, const TrainConfig& config);

// attention features of the raw state under the checkpoint's feature map
std::vector<double> model_features(const StateVector& raw_state, const AnsatzParams& params);

std::pair<PhaseLabel, std::array<double, 3>> predict(const StateVector& raw_state,
                                                     const ModelCheckpoint& checkpoint);

}  // namespace qpr
