#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "retrodiff/sde/ensemble_io.hpp"

namespace retrodiff::app {

struct CompareRequest {
  std::filesystem::path a;
  std::filesystem::path b;
  /// Times to compare; empty means every shared node.
  std::vector<double> times;
  /// Verdict threshold on the q-W1 at every compared time.
  double threshold = 0.02;
};

/// Per-time W1 and two-sample KS between the cross-sections of two
/// ensembles, for q and p. ConfigError when the time grids differ.
[[nodiscard]] nlohmann::ordered_json compare_tables(const sde::EnsembleTable& a, const sde::EnsembleTable& b,
                                                    const std::vector<double>& times, double threshold);

/// Reads both CSVs and compares them.
[[nodiscard]] nlohmann::ordered_json compare_files(const CompareRequest& request);

}  // namespace retrodiff::app
