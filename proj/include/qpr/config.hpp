#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpr {

struct GridSpec {
    double h1_min = 0.0;
    double h1_max = 1.6;
    int h1_count = 50;
    double h2_min = -1.6;
    double h2_max = 1.6;
    int h2_count = 50;

    void validate() const;
    std::size_t size() const { return static_cast<std::size_t>(h1_count) * h2_count; }
    double h1_at(int i) const;
    double h2_at(int j) const;
};

// One flat key=value document describes a full run; every artifact embeds
// the digest of the configuration that produced it.
struct RunConfig {
    // system + dataset
    int n_qubits = 9;
    double j = 1.0;
    GridSpec grid;
    std::uint64_t seed = 20240801;
    double tau_s = 0.5;
    double tau_a = 0.3;
    bool cache_states = false;  // write statevector shards next to the manifest

    // model + training
    int layers = 1;
    double learning_rate = 0.01;
    int epochs = 200;
    int train_size = 20;

    // experiments
    std::vector<int> accuracy_sizes = {4, 10, 20, 50, 100};
    int accuracy_repeats = 10;
    double sweep_h1 = 0.39;
    double sweep_h2_min = -1.6;
    double sweep_h2_max = 1.6;
    double sweep_h2_step = 0.05;
    long shots = 0;  // 0 = exact probabilities

    // execution (excluded from digests)
    int jobs = 0;  // 0 = QPR_JOBS env or OpenMP default
    std::string out_dir = "out";

    void validate() const;

    // canonical key=value serialization (sorted keys, %.17g floats);
    // excludes jobs/out_dir so execution details do not change identity
    std::string canonical() const;
    std::string digest() const;

    // identity of the dataset alone (n_qubits, j, grid, seed, thresholds)
    std::string dataset_canonical() const;
    std::string dataset_digest() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);
void apply_jobs_setting(const RunConfig& config);

}  // namespace qpr
