#pragma once

#include <string>

#include "qpr/classifier.hpp"

namespace qpr {

inline constexpr int kCheckpointSchemaVersion = 1;

// Single JSON document; parameter arrays embedded as base64 little-endian
// float64, label order recorded explicitly.
std::string checkpoint_to_json(const ModelCheckpoint& c);
ModelCheckpoint checkpoint_from_json(const std::string& text);

void write_checkpoint(const ModelCheckpoint& c, const std::string& path);
ModelCheckpoint load_checkpoint(const std::string& path);

}  // namespace qpr
