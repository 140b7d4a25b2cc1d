#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "retrodiff/core/grid.hpp"
#include "retrodiff/meanfield/particle_system.hpp"
#include "retrodiff/sde/trajectory.hpp"

namespace retrodiff::meanfield {

struct ChaosOptions {
  BandwidthRule bandwidth;
  NSystemOptions dynamics;
  /// Replicates run concurrently on up to this many workers (0 = all cores).
  unsigned threads = 0;
};

/// Called after sampling (step 0) and after every step.
using SnapshotObserver = std::function<void(std::size_t step, const ParticleSystem& system)>;

/// Samples N particles from the sampler's laws at grid.t0() and steps the
/// N-system to grid.tf().
[[nodiscard]] ParticleSystem run_nsystem(const DiffusionModel& model, const sde::BoundarySampler& sampler,
                                         std::size_t n_particles, const TimeGrid& grid, const sde::RandomSource& rng,
                                         const ChaosOptions& options, const SnapshotObserver& observer = {});

struct ChaosRow {
  std::size_t n_particles = 0;
  double bandwidth = 0.0;
  double w1_mean = 0.0;
  double w1_stderr = 0.0;
  double w1_mollified_mean = 0.0;
  double w1_mollified_stderr = 0.0;
};

struct ChaosReport {
  std::string model;
  std::vector<std::size_t> n_list;
  std::size_t n_reps = 0;
  std::string bandwidth_rule;
  std::string interaction;
  std::vector<ChaosRow> rows;
  /// Slope of log mean W1 against log N; absent for a single N.
  std::optional<double> loglog_slope;
  std::uint64_t seed = 0;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
  [[nodiscard]] bool w1_strictly_decreasing() const;
};

/// For each N: n_reps independent N-system runs to tf, W1 between the final
/// empirical measure (and its mollified version) and the sampler's q law at tf.
/// N_list must be strictly increasing with every N >= 10.
[[nodiscard]] ChaosReport chaos_experiment(const DiffusionModel& model, const sde::BoundarySampler& sampler,
                                           const std::vector<std::size_t>& n_list, std::size_t n_reps,
                                           const TimeGrid& grid, std::uint64_t master_seed,
                                           const ChaosOptions& options = {});

/// Pearson correlation of (q_1(tf), q_2(tf)) across `n_runs` independent runs.
[[nodiscard]] double decoupling_correlation(const DiffusionModel& model, const sde::BoundarySampler& sampler,
                                            std::size_t n_particles, std::size_t n_runs, const TimeGrid& grid,
                                            std::uint64_t master_seed, const ChaosOptions& options = {});

/// W1 between the Gaussian mixture (1/N) Σ N(q_i, h²) and N(mean, variance),
/// by trapezoidal integration of the CDF gap.
[[nodiscard]] double mollified_w1_to_normal(const ParticleSystem& system, double mean, double variance);

}  // namespace retrodiff::meanfield
