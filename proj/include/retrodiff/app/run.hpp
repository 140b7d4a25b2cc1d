#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "retrodiff/app/config.hpp"
#include "retrodiff/core/model.hpp"
#include "retrodiff/sde/trajectory.hpp"

namespace retrodiff::app {

inline constexpr const char* kVersion = "0.1.0";

/// Model, boundary laws and exact marginals of a named scenario.
struct Scenario {
  DiffusionModel model;
  sde::BoundarySampler sampler;
  GaussianMarginal q_law;  ///< exact q-marginal flow
  GaussianMarginal p_law;  ///< exact p-marginal flow
  /// Exact joint density at time t.
  std::function<double(double p, double q, double t)> joint_density;
};

/// ConfigError for unknown names.
[[nodiscard]] Scenario make_scenario(const ScenarioConfig& config);

struct RunResult {
  std::vector<std::filesystem::path> outputs;  ///< data files, manifest excluded
  nlohmann::ordered_json metrics;
  std::filesystem::path manifest;
};

/// Executes config.mode and writes its outputs, metrics.json and
/// manifest.json under config.out_dir.
RunResult run_scenario(const ScenarioConfig& config);

/// Chaos experiment over config.n_list; writes chaos_report.json.
RunResult run_chaos(const ScenarioConfig& config);

struct HusimiRequest {
  double p0 = 1.0;
  double q0 = 1.0;
  double hbar = 1.0;
  std::size_t points = 121;
  std::filesystem::path out;
};

/// Husimi density of a coherent state on a (p, q) grid spanning ±6√ħ, as CSV.
void run_husimi(const HusimiRequest& request);

/// Exit-code mapping shared by the CLI: 0 ok, 2 configuration, 3 runtime.
enum ExitCode : int { kOk = 0, kConfig = 2, kRuntime = 3 };

}  // namespace retrodiff::app
