#include "qpr/cli.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <vector>

#include "qpr/attention.hpp"
#include "qpr/checkpoint.hpp"
#include "qpr/errors.hpp"
#include "qpr/experiments.hpp"
#include "qpr/io.hpp"
#include "qpr/rng.hpp"

namespace qpr::cli {

namespace {

namespace fs = std::filesystem;

std::string ensure_out_dir(const RunConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + config.out_dir + "'");
    return config.out_dir;
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void require_dataset_match(const RunConfig& config, const DatasetManifest& m) {
    if (m.config_digest != config.dataset_digest())
        throw CompatibilityError(
            "manifest was produced by a different dataset configuration (digest " +
            m.config_digest + " vs " + config.dataset_digest() + ")");
}

void require_checkpoint_match(const DatasetManifest& m, const ModelCheckpoint& c) {
    if (c.meta.dataset_digest != m.config_digest)
        throw CompatibilityError("checkpoint was trained on a different dataset (digest " +
                                 c.meta.dataset_digest + " vs " + m.config_digest + ")");
}

}  // namespace

void run_gen(const RunConfig& config) {
    config.validate();
    apply_jobs_setting(config);
    const std::string dir = ensure_out_dir(config);

    GeneratedDataset data = generate_dataset(config, config.cache_states);
    if (config.cache_states)
        write_shards(data.manifest, data.states, join(dir, "states.f64"), "states.f64");
    write_manifest(data.manifest, join(dir, "manifest.json"));

    std::array<std::size_t, 3> counts{};
    for (const auto& r : data.manifest.records) counts[static_cast<int>(r.label)]++;
    std::cout << "dataset: " << data.manifest.records.size() << " records (AFM "
              << counts[0] << ", SPT " << counts[1] << ", PM " << counts[2] << ")\n";

    // crossover estimate on the h1 row nearest the default sweep
    const auto& g = config.grid;
    if (g.h2_count >= 5) {
        int row = 0;
        for (int i = 1; i < g.h1_count; ++i)
            if (std::abs(g.h1_at(i) - config.sweep_h1) <
                std::abs(g.h1_at(row) - config.sweep_h1))
                row = i;
        std::vector<double> xs, energies;
        for (int jdx = 0; jdx < g.h2_count; ++jdx) {
            const auto& rec =
                data.manifest.records[static_cast<std::size_t>(row) * g.h2_count + jdx];
            xs.push_back(rec.h2);
            energies.push_back(rec.energy);
        }
        std::cout << "crossovers at h1=" << fmt_g12(g.h1_at(row)) << ":";
        for (const double b : second_derivative_boundaries(xs, energies))
            std::cout << ' ' << fmt_g12(b);
        std::cout << '\n';
    }
    std::cout << "wrote " << join(dir, "manifest.json") << '\n';
}

void run_train(const RunConfig& config, const std::string& manifest_path) {
    config.validate();
    apply_jobs_setting(config);
    const std::string dir = ensure_out_dir(config);

    const DatasetManifest manifest = load_manifest(manifest_path);
    require_dataset_match(config, manifest);
    const std::vector<StateVector> states =
        materialize_states(manifest, fs::path(manifest_path).parent_path().string());

    TrainConfig base;
    base.learning_rate = config.learning_rate;
    base.epochs = config.epochs;
    base.layers = config.layers;

    SubsetRun run = train_on_subset(manifest, states, config.train_size,
                                    derive_seed(config.seed, 0x54524eULL), base);
    run.checkpoint.meta.config_digest = config.digest();

    write_checkpoint(run.checkpoint, join(dir, "checkpoint.json"));
    write_text_file_atomic(join(dir, "loss_history.csv"),
                           loss_history_csv(run.loss_history, config.digest()));
    std::cout << "final loss " << fmt_g12(run.checkpoint.meta.final_loss)
              << ", held-out accuracy " << fmt_g12(run.heldout_accuracy) << '\n'
              << "wrote " << join(dir, "checkpoint.json") << '\n';
}

void run_eval(const RunConfig& config, const std::string& manifest_path,
              const std::string& checkpoint_path) {
    config.validate();
    apply_jobs_setting(config);
    const std::string dir = ensure_out_dir(config);

    const DatasetManifest manifest = load_manifest(manifest_path);
    const ModelCheckpoint checkpoint = load_checkpoint(checkpoint_path);
    require_checkpoint_match(manifest, checkpoint);
    const std::vector<StateVector> states =
        materialize_states(manifest, fs::path(manifest_path).parent_path().string());

    std::vector<PhaseLabel> predicted(states.size());
    std::vector<std::array<double, 3>> probs(states.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < states.size(); ++k) {
        try {
            const auto [label, p] = predict(states[k], checkpoint);
            predicted[k] = label;
            probs[k] = p;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::size_t correct = 0;
    for (std::size_t k = 0; k < states.size(); ++k)
        if (predicted[k] == manifest.records[k].label) ++correct;

    write_text_file_atomic(join(dir, "predictions.csv"),
                           predictions_csv(manifest, predicted, probs, config.digest(),
                                           checkpoint.meta.config_digest));
    std::cout << "accuracy "
              << fmt_g12(static_cast<double>(correct) / static_cast<double>(states.size()))
              << " over " << states.size() << " records\n"
              << "wrote " << join(dir, "predictions.csv") << '\n';
}

void run_attention(const RunConfig& config, const std::string& checkpoint_path,
                   double h1, double h2) {
    config.validate();
    apply_jobs_setting(config);
    const std::string dir = ensure_out_dir(config);

    const ModelCheckpoint checkpoint = load_checkpoint(checkpoint_path);
    const HamiltonianSpec spec{checkpoint.n_qubits, config.j, h1, h2};
    GroundSolution sol = ground_state(spec, derive_seed(config.seed, 0x415454ULL));
    const double so = string_order(sol.state, spec.n_sites);
    const double nx = nn_xx(sol.state, spec.n_sites);
    const PhaseLabel label = label_point(so, nx, config.tau_s, config.tau_a);

    StateVector mapped = sol.state;
    apply_ansatz(mapped, checkpoint.ansatz());
    const AttentionMatrix att =
        config.shots > 0
            ? attention_circuit(mapped, config.shots, derive_seed(config.seed, 0x53485453ULL))
            : attention_analytic(mapped);

    std::ostringstream csv;
    csv << "# qpr attention config_digest=" << config.digest()
        << " checkpoint_digest=" << checkpoint.meta.config_digest << " h1=" << fmt_g12(h1)
        << " h2=" << fmt_g12(h2) << " label=" << to_string(label) << '\n';
    write_attention_csv(csv, att);
    write_text_file_atomic(join(dir, "attention.csv"), csv.str());

    std::ostringstream js;
    write_attention_json(js, att, h1, h2, to_string(label));
    write_text_file_atomic(join(dir, "attention.json"), js.str());
    std::cout << "label " << to_string(label) << ", wrote " << join(dir, "attention.csv")
              << '\n';
}

void run_analyze(const RunConfig& config, const std::string& checkpoint_path) {
    config.validate();
    apply_jobs_setting(config);
    const std::string dir = ensure_out_dir(config);

    const ModelCheckpoint checkpoint = load_checkpoint(checkpoint_path);
    const AnalysisSweep sweep = analysis_sweep(config, checkpoint);

    write_text_file_atomic(join(dir, "sweep.csv"),
                           sweep_csv(sweep, config.digest(), checkpoint.meta.config_digest));
    write_text_file_atomic(join(dir, "sweep_boundaries.csv"),
                           sweep_boundaries_csv(sweep, config.digest()));

    std::cout << "contrast sign changes:";
    for (const double z : sweep.sign_changes) std::cout << ' ' << fmt_g12(z);
    std::cout << "\ncurvature peaks:";
    for (const double b : sweep.boundaries) std::cout << ' ' << fmt_g12(b);
    std::cout << "\nwrote " << join(dir, "sweep.csv") << '\n';
}

void run_phase_diagram(const RunConfig& config, const std::string& manifest_path) {
    config.validate();
    apply_jobs_setting(config);
    const std::string dir = ensure_out_dir(config);

    const DatasetManifest manifest = load_manifest(manifest_path);
    require_dataset_match(config, manifest);
    write_text_file_atomic(join(dir, "phase_diagram.csv"), phase_diagram_csv(manifest));
    write_text_file_atomic(join(dir, "phase_boundaries.csv"),
                           phase_boundaries_csv(manifest));
    std::cout << "wrote " << join(dir, "phase_diagram.csv") << '\n';
}

void run_accuracy_curve(const RunConfig& config, const std::string& manifest_path) {
    config.validate();
    apply_jobs_setting(config);
    const std::string dir = ensure_out_dir(config);

    const DatasetManifest manifest = load_manifest(manifest_path);
    require_dataset_match(config, manifest);
    const std::vector<StateVector> states =
        materialize_states(manifest, fs::path(manifest_path).parent_path().string());

    TrainConfig base;
    base.learning_rate = config.learning_rate;
    base.epochs = config.epochs;
    base.layers = config.layers;

    const AccuracyExperiment experiment =
        accuracy_experiment(manifest, states, config.accuracy_sizes,
                            config.accuracy_repeats, config.seed, base);

    write_text_file_atomic(
        join(dir, "accuracy.csv"),
        accuracy_table_csv(experiment, config.digest(), manifest.config_digest));
    write_text_file_atomic(
        join(dir, "accuracy_cells.csv"),
        accuracy_cells_csv(experiment, config.digest(), manifest.config_digest));

    for (const auto& row : experiment.rows)
        std::cout << "size " << row.size << ": mean " << fmt_g12(row.mean) << " +- "
                  << fmt_g12(row.ci95_half) << " (" << row.ok_repeats << " runs)\n";
    std::cout << "wrote " << join(dir, "accuracy.csv") << '\n';
}

}  // namespace qpr::cli
