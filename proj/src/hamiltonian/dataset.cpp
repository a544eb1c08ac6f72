#include "qpr/dataset.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qpr/errors.hpp"
#include "qpr/io.hpp"
#include "qpr/rng.hpp"

namespace qpr {

HamiltonianSpec DatasetManifest::spec_for(std::size_t idx) const {
    if (idx >= records.size()) throw UsageError("manifest: record index out of range");
    return {n_qubits, j, records[idx].h1, records[idx].h2};
}

GeneratedDataset generate_dataset(const RunConfig& config, bool keep_states) {
    config.validate();

    GeneratedDataset out;
    auto& m = out.manifest;
    m.n_qubits = config.n_qubits;
    m.j = config.j;
    m.grid = config.grid;
    m.seed = config.seed;
    m.tau_s = config.tau_s;
    m.tau_a = config.tau_a;
    m.config_digest = config.dataset_digest();
    m.records.resize(m.grid.size());
    if (keep_states) out.states.resize(m.grid.size());

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int i = 0; i < m.grid.h1_count; ++i) {
        for (int jdx = 0; jdx < m.grid.h2_count; ++jdx) {
            const std::size_t flat =
                static_cast<std::size_t>(i) * m.grid.h2_count + jdx;
            const double h1 = m.grid.h1_at(i);
            const double h2 = m.grid.h2_at(jdx);
            try {
                const HamiltonianSpec spec{config.n_qubits, config.j, h1, h2};
                const std::uint64_t rec_seed = derive_seed(config.seed, flat);
                GroundSolution sol = ground_state(spec, rec_seed);

                GroundStateRecord rec;
                rec.h1 = h1;
                rec.h2 = h2;
                rec.energy = sol.energy;
                rec.gap = sol.gap;
                rec.string_order = string_order(sol.state, config.n_qubits);
                rec.nn_xx = nn_xx(sol.state, config.n_qubits);
                rec.label = label_point(rec.string_order, rec.nn_xx, config.tau_s,
                                        config.tau_a);
                rec.seed = rec_seed;
                m.records[flat] = rec;
                if (keep_states) out.states[flat] = std::move(sol.state);
            } catch (const ConvergenceError& e) {
#pragma omp critical
                if (!failure)
                    failure = std::make_exception_ptr(ConvergenceError(
                        "grid (h1=" + fmt_g12(h1) + ", h2=" + fmt_g12(h2) + "): " +
                            e.what(),
                        e.residual));
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

// ---------------------------------------------------------------------------
// manifest JSON
// ---------------------------------------------------------------------------

std::string manifest_to_json(const DatasetManifest& m) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = m.schema_version;
    doc["n_qubits"] = m.n_qubits;
    doc["j"] = m.j;
    doc["grid"] = {{"h1_min", m.grid.h1_min},   {"h1_max", m.grid.h1_max},
                   {"h1_count", m.grid.h1_count}, {"h2_min", m.grid.h2_min},
                   {"h2_max", m.grid.h2_max},   {"h2_count", m.grid.h2_count}};
    doc["seed"] = m.seed;
    doc["tau_s"] = m.tau_s;
    doc["tau_a"] = m.tau_a;
    doc["config_digest"] = m.config_digest;
    doc["shard_file"] = m.shard_file;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : m.records) {
        nlohmann::ordered_json row;
        row["h1"] = r.h1;
        row["h2"] = r.h2;
        row["label"] = to_string(r.label);
        row["string_order"] = r.string_order;
        row["nn_xx"] = r.nn_xx;
        row["energy"] = r.energy;
        row["gap"] = r.gap;
        row["seed"] = r.seed;
        if (r.shard_offset >= 0) {
            row["shard_offset"] = r.shard_offset;
            row["norm_checksum"] = r.norm_checksum;
        }
        rows.push_back(std::move(row));
    }
    doc["records"] = std::move(rows);
    return doc.dump(1) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("manifest: invalid JSON: ") + e.what());
    }
    DatasetManifest m;
    try {
        m.schema_version = doc.at("schema_version").get<int>();
        if (m.schema_version != kManifestSchemaVersion)
            throw CompatibilityError("manifest: schema version " +
                                     std::to_string(m.schema_version) + " unsupported");
        m.n_qubits = doc.at("n_qubits").get<int>();
        m.j = doc.at("j").get<double>();
        const auto& g = doc.at("grid");
        m.grid.h1_min = g.at("h1_min").get<double>();
        m.grid.h1_max = g.at("h1_max").get<double>();
        m.grid.h1_count = g.at("h1_count").get<int>();
        m.grid.h2_min = g.at("h2_min").get<double>();
        m.grid.h2_max = g.at("h2_max").get<double>();
        m.grid.h2_count = g.at("h2_count").get<int>();
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.tau_s = doc.at("tau_s").get<double>();
        m.tau_a = doc.at("tau_a").get<double>();
        m.config_digest = doc.at("config_digest").get<std::string>();
        m.shard_file = doc.at("shard_file").get<std::string>();
        for (const auto& row : doc.at("records")) {
            GroundStateRecord r;
            r.h1 = row.at("h1").get<double>();
            r.h2 = row.at("h2").get<double>();
            r.label = phase_label_from_string(row.at("label").get<std::string>());
            r.string_order = row.at("string_order").get<double>();
            r.nn_xx = row.at("nn_xx").get<double>();
            r.energy = row.at("energy").get<double>();
            r.gap = row.at("gap").get<double>();
            r.seed = row.at("seed").get<std::uint64_t>();
            if (row.contains("shard_offset")) {
                r.shard_offset = row.at("shard_offset").get<std::int64_t>();
                r.norm_checksum = row.at("norm_checksum").get<double>();
            }
            m.records.push_back(r);
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("manifest: missing or bad field: ") + e.what());
    }
    return m;
}

void write_manifest(const DatasetManifest& m, const std::string& path) {
    write_text_file_atomic(path, manifest_to_json(m));
}

DatasetManifest load_manifest(const std::string& path) {
    return manifest_from_json(read_text_file(path));
}

// ---------------------------------------------------------------------------
// statevector shards
// ---------------------------------------------------------------------------

void write_shards(DatasetManifest& m, const std::vector<StateVector>& states,
                  const std::string& path, const std::string& shard_file_name) {
    if (states.size() != m.records.size())
        throw UsageError("write_shards: state count does not match manifest");
    const std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    std::int64_t offset = 0;
    for (std::size_t idx = 0; idx < states.size(); ++idx) {
        const auto& s = states[idx];
        std::vector<double> buf(s.dim() * 2);
        double norm_sq = 0.0;
        for (std::size_t k = 0; k < s.dim(); ++k) {
            buf[2 * k] = s.amplitudes()[k].real();
            buf[2 * k + 1] = s.amplitudes()[k].imag();
            norm_sq += buf[2 * k] * buf[2 * k] + buf[2 * k + 1] * buf[2 * k + 1];
        }
        m.records[idx].shard_offset = offset;
        m.records[idx].norm_checksum = norm_sq;
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(double)));
        offset += static_cast<std::int64_t>(buf.size() * sizeof(double));
    }
    if (!out.good()) throw IoError("write failed for '" + tmp + "'");
    out.close();
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move shard file into place");
    m.shard_file = shard_file_name;
}

StateVector load_shard_state(const DatasetManifest& m, std::size_t idx,
                             const std::string& shard_path) {
    const auto& rec = m.records.at(idx);
    if (rec.shard_offset < 0) throw IoError("record has no shard entry");
    const std::size_t dim = std::size_t{1} << m.n_qubits;
    std::ifstream in(shard_path, std::ios::binary);
    if (!in) throw IoError("cannot open shard file '" + shard_path + "'");
    in.seekg(rec.shard_offset);
    std::vector<double> buf(dim * 2);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!in.good()) throw IoError("shard read failed at offset " +
                                  std::to_string(rec.shard_offset));
    std::vector<cd> amp(dim);
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        amp[k] = cd{buf[2 * k], buf[2 * k + 1]};
        norm_sq += buf[2 * k] * buf[2 * k] + buf[2 * k + 1] * buf[2 * k + 1];
    }
    if (std::abs(norm_sq - rec.norm_checksum) > 1e-12)
        throw IoError("shard checksum mismatch for record " + std::to_string(idx));
    return StateVector::from_amplitudes(m.n_qubits, std::move(amp));
}

StateVector regenerate_state(const DatasetManifest& m, std::size_t idx) {
    return ground_state(m.spec_for(idx), m.records.at(idx).seed).state;
}

std::vector<StateVector> materialize_states(const DatasetManifest& m,
                                            const std::string& manifest_dir,
                                            bool allow_regenerate) {
    std::vector<StateVector> states(m.records.size());
    const bool sharded = !m.shard_file.empty();
    const std::string shard_path =
        sharded ? (std::filesystem::path(manifest_dir) / m.shard_file).string() : "";
    if (!sharded && !allow_regenerate)
        throw IoError("dataset has no statevector shards and regeneration is disabled");

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t idx = 0; idx < m.records.size(); ++idx) {
        try {
            states[idx] = sharded ? load_shard_state(m, idx, shard_path)
                                  : regenerate_state(m, idx);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return states;
}

}  // namespace qpr
