#pragma once

#include <optional>
#include <string>

#include "qpr/config.hpp"

namespace qpr::cli {

// Command bodies shared by the binary and the integration tests. All throw
// qpr::Error subclasses; the binary maps them to exit codes.
void run_gen(const RunConfig& config);
void run_train(const RunConfig& config, const std::string& manifest_path);
void run_eval(const RunConfig& config, const std::string& manifest_path,
              const std::string& checkpoint_path);
void run_attention(const RunConfig& config, const std::string& checkpoint_path,
                   double h1, double h2);
void run_analyze(const RunConfig& config, const std::string& checkpoint_path);
void run_phase_diagram(const RunConfig& config, const std::string& manifest_path);
void run_accuracy_curve(const RunConfig& config, const std::string& manifest_path);

}  // namespace qpr::cli
