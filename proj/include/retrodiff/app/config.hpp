#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace retrodiff::app {

/// Effective configuration of one run. Serialized as a flat JSON object;
/// every field has a default so a config file only lists what it changes.
struct ScenarioConfig {
  std::string scenario = "amplifier";       ///< amplifier | free_particle
  std::string mode = "forward_guided";      ///< retro | forward_guided | deterministic | meanfield | fp_oracle
  double t0 = 0.0;
  double tf = 1.0;
  double dt = 1e-3;
  std::size_t n_traj = 1000;
  std::size_t n_particles = 200;
  std::size_t n_reps = 20;
  std::vector<std::size_t> n_list = {50, 200, 800};
  double p0 = 1.0;
  double q0 = 1.0;
  double mass = 1.0;
  std::uint64_t seed = 1;
  std::string drift_convention = "anderson";
  std::string bandwidth_rule = "inverse_n";
  std::string interaction = "mollified_score";
  /// Keep every k-th time node in trajectory / particle outputs.
  std::size_t record_stride = 1;
  /// fp_oracle grid points per axis and step (0 = largest stable step).
  std::size_t grid_points = 301;
  double fp_dt = 0.0;
  std::string out_dir = ".";
  unsigned threads = 0;

  /// ConfigError naming the offending key for unknown keys, wrong types,
  /// and values outside their domain.
  static ScenarioConfig from_json(const nlohmann::json& j);
  [[nodiscard]] nlohmann::ordered_json to_json() const;
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Reads a JSON config file; ConfigError when unreadable or malformed.
[[nodiscard]] nlohmann::json load_config_file(const std::string& path);

}  // namespace retrodiff::app
