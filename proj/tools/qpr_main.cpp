// qpr: cluster-Ising phase recognition with swap-test attention.
//
//   qpr gen            --config run.cfg                       dataset manifest
//   qpr train          --config run.cfg --manifest m.json     checkpoint
//   qpr eval           --manifest m.json --checkpoint c.json  predictions
//   qpr attention      --checkpoint c.json --h1 X --h2 Y      heatmap export
//   qpr analyze        --checkpoint c.json                    contrast/xi sweep
//   qpr phase-diagram  --manifest m.json                      grid + boundaries
//   qpr accuracy-curve --manifest m.json                      accuracy table

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "qpr/cli.hpp"
#include "qpr/errors.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> jobs;
    std::optional<int> size;
    std::optional<long> shots;
};

qpr::RunConfig make_config(const GlobalArgs& args) {
    qpr::RunConfig cfg;
    if (!args.config_path.empty()) cfg = qpr::load_config_file(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.out_dir) cfg.out_dir = *args.out_dir;
    if (args.jobs) cfg.jobs = *args.jobs;
    if (args.size) cfg.train_size = *args.size;
    if (args.shots) cfg.shots = *args.shots;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster-Ising quantum phase recognition via swap-test attention"};
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path, "run configuration file (key = value)");
    app.add_option("--seed", args.seed, "master seed override");
    app.add_option("--out", args.out_dir, "output directory override");
    app.add_option("--jobs", args.jobs, "worker threads (default: QPR_JOBS or OpenMP)");

    auto* gen = app.add_subcommand("gen", "generate the labeled ground-state dataset");

    std::string manifest_path, checkpoint_path;
    auto* train = app.add_subcommand("train", "train a model on a dataset subset");
    train->add_option("--manifest", manifest_path, "dataset manifest")->required();
    train->add_option("--size", args.size, "training set size override");

    auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on the full dataset");
    eval->add_option("--manifest", manifest_path, "dataset manifest")->required();
    eval->add_option("--checkpoint", checkpoint_path, "model checkpoint")->required();

    double h1 = 0.0, h2 = 0.0;
    auto* attention = app.add_subcommand("attention", "attention heatmap at one (h1, h2)");
    attention->add_option("--checkpoint", checkpoint_path, "model checkpoint")->required();
    attention->add_option("--h1", h1, "transverse field h1")->required();
    attention->add_option("--h2", h2, "Ising coupling h2")->required();
    attention->add_option("--shots", args.shots, "swap-test shots (0 = exact)");

    auto* analyze = app.add_subcommand("analyze", "contrast and correlation-length sweep");
    analyze->add_option("--checkpoint", checkpoint_path, "model checkpoint")->required();

    auto* phase = app.add_subcommand("phase-diagram", "string-order grid and boundaries");
    phase->add_option("--manifest", manifest_path, "dataset manifest")->required();

    auto* curve = app.add_subcommand("accuracy-curve", "accuracy vs training-set size");
    curve->add_option("--manifest", manifest_path, "dataset manifest")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(qpr::ExitCode::usage);
    }

    try {
        const qpr::RunConfig cfg = make_config(args);
        if (gen->parsed()) qpr::cli::run_gen(cfg);
        else if (train->parsed()) qpr::cli::run_train(cfg, manifest_path);
        else if (eval->parsed()) qpr::cli::run_eval(cfg, manifest_path, checkpoint_path);
        else if (attention->parsed()) qpr::cli::run_attention(cfg, checkpoint_path, h1, h2);
        else if (analyze->parsed()) qpr::cli::run_analyze(cfg, checkpoint_path);
        else if (phase->parsed()) qpr::cli::run_phase_diagram(cfg, manifest_path);
        else if (curve->parsed()) qpr::cli::run_accuracy_curve(cfg, manifest_path);
    } catch (const qpr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return static_cast<int>(qpr::ExitCode::internal);
    }
    return 0;
}
