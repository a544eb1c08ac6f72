#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpr/config.hpp"
#include "qpr/hamiltonian.hpp"
#include "qpr/statevec.hpp"

namespace qpr {

inline constexpr int kManifestSchemaVersion = 1;

struct GroundStateRecord {
    double h1 = 0.0;
    double h2 = 0.0;
    double energy = 0.0;
    double gap = 0.0;
    double string_order = 0.0;
    double nn_xx = 0.0;
    PhaseLabel label = PhaseLabel::PM;
    std::uint64_t seed = 0;          // start-vector seed; records regenerate from it
    double norm_checksum = 0.0;      // squared norm stored with the shard entry
    std::int64_t shard_offset = -1;  // byte offset, -1 when no shard was written
};

struct DatasetManifest {
    int schema_version = kManifestSchemaVersion;
    int n_qubits = 0;
    double j = 1.0;
    GridSpec grid;
    std::uint64_t seed = 0;
    double tau_s = 0.5;
    double tau_a = 0.3;
    std::string config_digest;  // dataset-defining digest of the producing config
    std::string shard_file;     // relative to the manifest, empty when disabled
    std::vector<GroundStateRecord> records;

    HamiltonianSpec spec_for(std::size_t idx) const;
};

struct GeneratedDataset {
    DatasetManifest manifest;
    std::vector<StateVector> states;  // populated only when shards are requested
};

// Deterministic grid sweep, h1-major record order. Solver failures carry
// the grid coordinates in their message. When keep_states is set, the
// returned states line up with manifest.records.
GeneratedDataset generate_dataset(const RunConfig& config, bool keep_states);

std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const std::string& text);
void write_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest load_manifest(const std::string& path);

// Interleaved little-endian (real, imag) float64 shards, one record per
// offset, validated against the stored norm checksum on load. Fills each
// record's shard_offset and norm_checksum and sets m.shard_file.
void write_shards(DatasetManifest& m, const std::vector<StateVector>& states,
                  const std::string& path, const std::string& shard_file_name);
StateVector load_shard_state(const DatasetManifest& m, std::size_t idx,
                             const std::string& shard_path);

// All record states, shard-loaded when available, regenerated otherwise
// (parallel across records). `manifest_dir` resolves the shard path.
std::vector<StateVector> materialize_states(const DatasetManifest& m,
                                            const std::string& manifest_dir,
                                            bool allow_regenerate = true);

StateVector regenerate_state(const DatasetManifest& m, std::size_t idx);

}  // namespace qpr
