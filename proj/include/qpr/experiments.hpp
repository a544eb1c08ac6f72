#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpr/analysis.hpp"
#include "qpr/checkpoint.hpp"
#include "qpr/classifier.hpp"
#include "qpr/config.hpp"
#include "qpr/dataset.hpp"

namespace qpr {

// ---------------------------------------------------------------------------
// training/evaluation against a dataset
// ---------------------------------------------------------------------------

struct SubsetRun {
    ModelCheckpoint checkpoint;
    std::vector<double> loss_history;
    std::vector<std::size_t> train_indices;
    double heldout_accuracy = 0.0;
};

// Draw `size` records (seeded), train on them, evaluate on the disjoint
// remainder. `states` must line up with manifest.records.
SubsetRun train_on_subset(const DatasetManifest& manifest,
                          const std::vector<StateVector>& states, int size,
                          std::uint64_t cell_seed, const TrainConfig& base);

double evaluate_accuracy(const ModelCheckpoint& checkpoint,
                         const DatasetManifest& manifest,
                         const std::vector<StateVector>& states,
                         const std::vector<std::size_t>& indices);

// ---------------------------------------------------------------------------
// accuracy-vs-training-size experiment
// ---------------------------------------------------------------------------

struct AccuracyCell {
    int size = 0;
    int repeat = 0;
    double accuracy = 0.0;
    bool ok = false;
    std::string error;
};

struct AccuracyRow {
    int size = 0;
    double mean = 0.0;
    double stddev = 0.0;    // sample standard deviation over ok repeats
    double ci95_half = 0.0; // 1.96 * stddev / sqrt(ok repeats)
    int ok_repeats = 0;
};

struct AccuracyExperiment {
    std::vector<AccuracyCell> cells;
    std::vector<AccuracyRow> rows;
};

// Cell seeds derive from (master_seed, size, repeat); training failures are
// recorded in the cell, not fatal.
AccuracyExperiment accuracy_experiment(const DatasetManifest& manifest,
                                       const std::vector<StateVector>& states,
                                       const std::vector<int>& sizes, int repeats,
                                       std::uint64_t master_seed,
                                       const TrainConfig& base);

// ---------------------------------------------------------------------------
// fixed-h1 sweep over h2: contrast + correlation length + crossovers
// ---------------------------------------------------------------------------

struct SweepPoint {
    double h2 = 0.0;
    double energy = 0.0;
    ContrastResult contrast;
    CorrelationProfile profile;
};

struct AnalysisSweep {
    double h1 = 0.0;
    std::vector<SweepPoint> points;
    std::vector<double> boundaries;       // curvature peaks of the sweep energies
    std::vector<double> sign_changes;     // interpolated zero crossings of C
};

AnalysisSweep analysis_sweep(const RunConfig& config, const ModelCheckpoint& checkpoint);

// ---------------------------------------------------------------------------
// CSV artifacts (12 significant digits; digest provenance in a # header)
// ---------------------------------------------------------------------------

std::string accuracy_table_csv(const AccuracyExperiment& e, const std::string& config_digest,
                               const std::string& dataset_digest);
std::string accuracy_cells_csv(const AccuracyExperiment& e, const std::string& config_digest,
                               const std::string& dataset_digest);
std::string sweep_csv(const AnalysisSweep& s, const std::string& config_digest,
                      const std::string& checkpoint_digest);
std::string sweep_boundaries_csv(const AnalysisSweep& s, const std::string& config_digest);
std::string phase_diagram_csv(const DatasetManifest& m);
std::string phase_boundaries_csv(const DatasetManifest& m, const BoundaryOptions& opts = {});
std::string loss_history_csv(const std::vector<double>& history,
                             const std::string& config_digest);
std::string predictions_csv(const DatasetManifest& manifest,
                            const std::vector<PhaseLabel>& predicted,
                            const std::vector<std::array<double, 3>>& probs,
                            const std::string& config_digest,
                            const std::string& checkpoint_digest);

}  // namespace qpr
