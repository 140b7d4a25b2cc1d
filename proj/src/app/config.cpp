#include "retrodiff/app/config.hpp"

#include <fstream>
#include <set>

#include "retrodiff/core/error.hpp"
#include "retrodiff/core/guidance.hpp"
#include "retrodiff/meanfield/kernel.hpp"
#include "retrodiff/meanfield/particle_system.hpp"

namespace retrodiff::app {
namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string(key) + ": wrong type '" + j.at(key).dump() + "'");
  }
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "scenario", "mode",          "t0",          "tf",          "dt",          "n_traj",  "n_particles",
      "n_reps",   "n_list",        "p0",          "q0",          "mass",        "seed",    "drift_sign_convention",
      "bandwidth_rule", "interaction", "record_stride", "grid_points", "fp_dt", "out_dir", "threads"};
  return keys;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (!known_keys().contains(key)) throw ConfigError(key + ": unknown configuration key");
  ScenarioConfig c;
  read(j, "scenario", c.scenario);
  read(j, "mode", c.mode);
  read(j, "t0", c.t0);
  read(j, "tf", c.tf);
  read(j, "dt", c.dt);
  read(j, "n_traj", c.n_traj);
  read(j, "n_particles", c.n_particles);
  read(j, "n_reps", c.n_reps);
  read(j, "n_list", c.n_list);
  read(j, "p0", c.p0);
  read(j, "q0", c.q0);
  read(j, "mass", c.mass);
  read(j, "seed", c.seed);
  read(j, "drift_sign_convention", c.drift_convention);
  read(j, "bandwidth_rule", c.bandwidth_rule);
  read(j, "interaction", c.interaction);
  read(j, "record_stride", c.record_stride);
  read(j, "grid_points", c.grid_points);
  read(j, "fp_dt", c.fp_dt);
  read(j, "out_dir", c.out_dir);
  read(j, "threads", c.threads);
  c.validate();
  return c;
}

nlohmann::ordered_json ScenarioConfig::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["mode"] = mode;
  j["t0"] = t0;
  j["tf"] = tf;
  j["dt"] = dt;
  j["n_traj"] = n_traj;
  j["n_particles"] = n_particles;
  j["n_reps"] = n_reps;
  j["n_list"] = n_list;
  j["p0"] = p0;
  j["q0"] = q0;
  j["mass"] = mass;
  j["seed"] = seed;
  j["drift_sign_convention"] = drift_convention;
  j["bandwidth_rule"] = bandwidth_rule;
  j["interaction"] = interaction;
  j["record_stride"] = record_stride;
  j["grid_points"] = grid_points;
  j["fp_dt"] = fp_dt;
  j["out_dir"] = out_dir;
  j["threads"] = threads;
  return j;
}

void ScenarioConfig::validate() const {
  if (scenario != "amplifier" && scenario != "free_particle")
    throw ConfigError("scenario: unknown value '" + scenario + "' (expected amplifier or free_particle)");
  static const std::set<std::string> modes = {"retro", "forward_guided", "deterministic", "meanfield", "fp_oracle"};
  if (!modes.contains(mode)) throw ConfigError("mode: unknown value '" + mode + "'");
  if (!(tf > t0)) throw ConfigError("tf: must exceed t0");
  if (!(dt > 0.0)) throw ConfigError("dt: must be > 0");
  if (n_traj == 0) throw ConfigError("n_traj: must be >= 1");
  if (n_particles < 2) throw ConfigError("n_particles: must be >= 2");
  if (n_reps == 0) throw ConfigError("n_reps: must be >= 1");
  if (!(mass > 0.0)) throw ConfigError("mass: must be > 0");
  if (record_stride == 0) throw ConfigError("record_stride: must be >= 1");
  if (grid_points < 11) throw ConfigError("grid_points: must be >= 11");
  if (fp_dt < 0.0) throw ConfigError("fp_dt: must be >= 0");
  static_cast<void>(parse_drift_convention(drift_convention));
  static_cast<void>(meanfield::BandwidthRule::parse(bandwidth_rule));
  static_cast<void>(meanfield::parse_interaction(interaction));
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace retrodiff::app
