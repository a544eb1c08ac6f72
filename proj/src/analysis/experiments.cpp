#include "qpr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpr/errors.hpp"
#include "qpr/io.hpp"
#include "qpr/rng.hpp"

namespace qpr {

SubsetRun train_on_subset(const DatasetManifest& manifest,
                          const std::vector<StateVector>& states, int size,
                          std::uint64_t cell_seed, const TrainConfig& base) {
    if (size < 1) throw UsageError("train_on_subset: size must be >= 1");
    const std::size_t total = manifest.records.size();
    if (static_cast<std::size_t>(size) >= total)
        throw UsageError("train_on_subset: size leaves no held-out records");
    if (states.size() != total)
        throw UsageError("train_on_subset: states do not line up with the manifest");

    Rng draw(derive_seed(cell_seed, 0));
    SubsetRun run;
    run.train_indices = draw.sample_without_replacement(total, static_cast<std::size_t>(size));
    std::sort(run.train_indices.begin(), run.train_indices.end());

    std::vector<TrainSample> samples;
    samples.reserve(run.train_indices.size());
    for (const std::size_t idx : run.train_indices)
        samples.push_back({states[idx], manifest.records[idx].label});

    TrainConfig cfg = base;
    cfg.seed = derive_seed(cell_seed, 1);
    TrainResult result = train(samples, cfg);
    run.checkpoint = std::move(result.checkpoint);
    run.loss_history = std::move(result.loss_history);
    run.checkpoint.meta.dataset_digest = manifest.config_digest;

    std::vector<std::size_t> heldout;
    heldout.reserve(total - run.train_indices.size());
    std::size_t cursor = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (cursor < run.train_indices.size() && run.train_indices[cursor] == idx) {
            ++cursor;
            continue;
        }
        heldout.push_back(idx);
    }
    run.heldout_accuracy = evaluate_accuracy(run.checkpoint, manifest, states, heldout);
    return run;
}

double evaluate_accuracy(const ModelCheckpoint& checkpoint,
                         const DatasetManifest& manifest,
                         const std::vector<StateVector>& states,
                         const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw UsageError("evaluate_accuracy: empty index set");
    std::vector<unsigned char> hits(indices.size(), 0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < indices.size(); ++k) {
        try {
            const std::size_t idx = indices[k];
            const auto [label, probs] = predict(states[idx], checkpoint);
            hits[k] = label == manifest.records[idx].label ? 1 : 0;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    std::size_t correct = 0;
    for (const auto h : hits) correct += h;
    return static_cast<double>(correct) / static_cast<double>(indices.size());
}

AccuracyExperiment accuracy_experiment(const DatasetManifest& manifest,
                                       const std::vector<StateVector>& states,
                                       const std::vector<int>& sizes, int repeats,
                                       std::uint64_t master_seed,
                                       const TrainConfig& base) {
    if (repeats < 2) throw UsageError("accuracy_experiment: repeats must be >= 2");

    AccuracyExperiment out;
    for (const int size : sizes) {
        std::vector<double> values;
        for (int rep = 0; rep < repeats; ++rep) {
            AccuracyCell cell;
            cell.size = size;
            cell.repeat = rep;
            const std::uint64_t cell_seed =
                derive_seed(master_seed, static_cast<std::uint64_t>(size),
                            static_cast<std::uint64_t>(rep));
            try {
                cell.accuracy =
                    train_on_subset(manifest, states, size, cell_seed, base).heldout_accuracy;
                cell.ok = true;
                values.push_back(cell.accuracy);
            } catch (const Error& e) {
                cell.error = e.what();
            }
            out.cells.push_back(std::move(cell));
        }

        AccuracyRow row;
        row.size = size;
        row.ok_repeats = static_cast<int>(values.size());
        if (!values.empty()) {
            double mean = 0.0;
            for (const double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double var = 0.0;
            for (const double v : values) var += (v - mean) * (v - mean);
            const double stddev =
                values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
            row.mean = mean;
            row.stddev = stddev;
            row.ci95_half = 1.96 * stddev / std::sqrt(static_cast<double>(values.size()));
        }
        out.rows.push_back(row);
    }
    return out;
}

AnalysisSweep analysis_sweep(const RunConfig& config, const ModelCheckpoint& checkpoint) {
    config.validate();
    checkpoint.validate();
    const int count =
        static_cast<int>(std::round((config.sweep_h2_max - config.sweep_h2_min) /
                                    config.sweep_h2_step)) + 1;
    if (count < 5) throw UsageError("analysis_sweep: sweep grid too small");

    AnalysisSweep sweep;
    sweep.h1 = config.sweep_h1;
    sweep.points.resize(static_cast<std::size_t>(count));

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < count; ++k) {
        try {
            const double h2 = config.sweep_h2_min + config.sweep_h2_step * k;
            const HamiltonianSpec spec{checkpoint.n_qubits, config.j, config.sweep_h1, h2};
            GroundSolution sol =
                ground_state(spec, derive_seed(config.seed, 0x53454550ULL,
                                               static_cast<std::uint64_t>(k)));
            StateVector mapped = sol.state;
            apply_ansatz(mapped, checkpoint.ansatz());
            const AttentionMatrix att = attention_analytic(mapped);

            SweepPoint& pt = sweep.points[static_cast<std::size_t>(k)];
            pt.h2 = h2;
            pt.energy = sol.energy;
            pt.contrast = contrast(att);
            pt.contrast.h1 = config.sweep_h1;
            pt.contrast.h2 = h2;
            pt.profile = correlation_profile(att);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> xs, energies;
    for (const auto& pt : sweep.points) {
        xs.push_back(pt.h2);
        energies.push_back(pt.energy);
    }
    sweep.boundaries = second_derivative_boundaries(xs, energies);

    // crossings between consecutive nonzero contrast values
    std::size_t prev = sweep.points.size();
    for (std::size_t k = 0; k < sweep.points.size(); ++k) {
        const double c = sweep.points[k].contrast.value;
        if (c == 0.0) continue;
        if (prev < sweep.points.size()) {
            const double a = sweep.points[prev].contrast.value;
            if (a * c < 0.0) {
                const double t = a / (a - c);  // linear interpolation of the zero
                sweep.sign_changes.push_back(
                    sweep.points[prev].h2 + t * (sweep.points[k].h2 - sweep.points[prev].h2));
            }
        }
        prev = k;
    }
    return sweep;
}

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

namespace {

std::string provenance(const std::string& kind, const std::string& config_digest,
                       const std::string& extra_key = "", const std::string& extra = "") {
    std::string line = "# qpr " + kind + " config_digest=" + config_digest;
    if (!extra_key.empty()) line += " " + extra_key + "=" + extra;
    line += "\n";
    return line;
}

}  // namespace

std::string accuracy_table_csv(const AccuracyExperiment& e, const std::string& config_digest,
                               const std::string& dataset_digest) {
    std::ostringstream os;
    os << provenance("accuracy", config_digest, "dataset_digest", dataset_digest);
    os << "size,mean_accuracy,stddev,ci95_half,ok_repeats\n";
    for (const auto& r : e.rows)
        os << r.size << ',' << fmt_g12(r.mean) << ',' << fmt_g12(r.stddev) << ','
           << fmt_g12(r.ci95_half) << ',' << r.ok_repeats << '\n';
    return os.str();
}

std::string accuracy_cells_csv(const AccuracyExperiment& e, const std::string& config_digest,
                               const std::string& dataset_digest) {
    std::ostringstream os;
    os << provenance("accuracy-cells", config_digest, "dataset_digest", dataset_digest);
    os << "size,repeat,accuracy,ok,error\n";
    for (const auto& c : e.cells)
        os << c.size << ',' << c.repeat << ',' << fmt_g12(c.accuracy) << ','
           << (c.ok ? 1 : 0) << ',' << '"' << c.error << '"' << '\n';
    return os.str();
}

std::string sweep_csv(const AnalysisSweep& s, const std::string& config_digest,
                      const std::string& checkpoint_digest) {
    std::ostringstream os;
    os << provenance("sweep", config_digest, "checkpoint_digest", checkpoint_digest);
    os << "h1,h2,energy,contrast,q_near,q_long,reference_qubit,side,xi,fit_slope,"
          "non_decaying,fit_points,n_sub\n";
    for (const auto& pt : s.points) {
        os << fmt_g12(s.h1) << ',' << fmt_g12(pt.h2) << ',' << fmt_g12(pt.energy) << ','
           << fmt_g12(pt.contrast.value) << ',' << fmt_g12(pt.contrast.q_near) << ','
           << fmt_g12(pt.contrast.q_long) << ',' << pt.contrast.reference_qubit << ','
           << to_string(pt.profile.side) << ',' << fmt_g12(pt.profile.xi) << ','
           << fmt_g12(pt.profile.fit_slope) << ',' << (pt.profile.non_decaying ? 1 : 0)
           << ',' << pt.profile.fit_points_used << ',' << pt.profile.n_sub << '\n';
    }
    return os.str();
}

std::string sweep_boundaries_csv(const AnalysisSweep& s, const std::string& config_digest) {
    std::ostringstream os;
    os << provenance("sweep-boundaries", config_digest);
    os << "kind,h2\n";
    for (const double b : s.boundaries) os << "curvature_peak," << fmt_g12(b) << '\n';
    for (const double z : s.sign_changes) os << "contrast_zero," << fmt_g12(z) << '\n';
    return os.str();
}

std::string phase_diagram_csv(const DatasetManifest& m) {
    std::ostringstream os;
    os << provenance("phase-diagram", m.config_digest);
    os << "h1,h2,string_order,label\n";
    for (const auto& r : m.records)
        os << fmt_g12(r.h1) << ',' << fmt_g12(r.h2) << ',' << fmt_g12(r.string_order)
           << ',' << to_string(r.label) << '\n';
    return os.str();
}

std::string phase_boundaries_csv(const DatasetManifest& m, const BoundaryOptions& opts) {
    std::ostringstream os;
    os << provenance("phase-boundaries", m.config_digest);
    os << "h1,h2\n";
    for (int i = 0; i < m.grid.h1_count; ++i) {
        std::vector<double> xs, energies;
        xs.reserve(static_cast<std::size_t>(m.grid.h2_count));
        for (int jdx = 0; jdx < m.grid.h2_count; ++jdx) {
            const auto& rec =
                m.records[static_cast<std::size_t>(i) * m.grid.h2_count + jdx];
            xs.push_back(rec.h2);
            energies.push_back(rec.energy);
        }
        if (xs.size() < 5) continue;
        for (const double b : second_derivative_boundaries(xs, energies, opts))
            os << fmt_g12(m.grid.h1_at(i)) << ',' << fmt_g12(b) << '\n';
    }
    return os.str();
}

std::string loss_history_csv(const std::vector<double>& history,
                             const std::string& config_digest) {
    std::ostringstream os;
    os << provenance("loss-history", config_digest);
    os << "epoch,loss\n";
    for (std::size_t e = 0; e < history.size(); ++e)
        os << e << ',' << fmt_g12(history[e]) << '\n';
    return os.str();
}

std::string predictions_csv(const DatasetManifest& manifest,
                            const std::vector<PhaseLabel>& predicted,
                            const std::vector<std::array<double, 3>>& probs,
                            const std::string& config_digest,
                            const std::string& checkpoint_digest) {
    if (predicted.size() != manifest.records.size() || probs.size() != predicted.size())
        throw UsageError("predictions_csv: size mismatch");
    std::ostringstream os;
    os << provenance("predictions", config_digest, "checkpoint_digest", checkpoint_digest);
    os << "h1,h2,label,predicted,p_afm,p_spt,p_pm\n";
    for (std::size_t k = 0; k < predicted.size(); ++k) {
        const auto& r = manifest.records[k];
        os << fmt_g12(r.h1) << ',' << fmt_g12(r.h2) << ',' << to_string(r.label) << ','
           << to_string(predicted[k]) << ',' << fmt_g12(probs[k][0]) << ','
           << fmt_g12(probs[k][1]) << ',' << fmt_g12(probs[k][2]) << '\n';
    }
    return os.str();
}

}  // namespace qpr
