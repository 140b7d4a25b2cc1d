#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "retrodiff/core/grid.hpp"
#include "retrodiff/core/marginal.hpp"

namespace retrodiff::sde {

/// Phase-space path sampled at every node of `grid`.
class Trajectory {
 public:
  /// DomainError unless states.size() == grid.n_nodes() and all states are finite.
  Trajectory(TimeGrid grid, std::vector<PhaseState> states);

  [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] const std::vector<PhaseState>& states() const noexcept { return states_; }
  [[nodiscard]] const PhaseState& at(std::size_t node) const { return states_.at(node); }

 private:
  TimeGrid grid_;
  std::vector<PhaseState> states_;
};

enum class Mode { retro, forward_guided, deterministic };

[[nodiscard]] std::string to_string(Mode mode);
/// ConfigError on unknown names.
[[nodiscard]] Mode parse_mode(std::string_view name);

/// Laws of the boundary values: p at t0, and q at t0 (forward modes) or
/// tf (retro).
struct BoundarySampler {
  GaussianMarginal p_initial;
  GaussianMarginal q_boundary;
};

/// The Husimi law of the coherent state at (p0, q0) with ħ = 1, i.e.
/// N(p0, 1) × N(q0, 1) at t0, carried by the amplifier solution to tf for
/// the retro boundary.
[[nodiscard]] BoundarySampler amplifier_sampler(double p0, double q0);
[[nodiscard]] BoundarySampler free_particle_sampler(double p0, double q0, double mass);

class Ensemble {
 public:
  /// All trajectories must share one grid.
  Ensemble(std::vector<Trajectory> trajectories, std::string model_name, Mode mode, std::uint64_t master_seed);

  [[nodiscard]] const std::vector<Trajectory>& trajectories() const noexcept { return trajectories_; }
  [[nodiscard]] const TimeGrid& grid() const { return trajectories_.front().grid(); }
  [[nodiscard]] const std::string& model_name() const noexcept { return model_name_; }
  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }
  [[nodiscard]] std::size_t size() const noexcept { return trajectories_.size(); }

  /// Cross-section of q (or p) over trajectories at a grid node.
  [[nodiscard]] std::vector<double> q_at(std::size_t node) const;
  [[nodiscard]] std::vector<double> p_at(std::size_t node) const;

 private:
  std::vector<Trajectory> trajectories_;
  std::string model_name_;
  Mode mode_;
  std::uint64_t master_seed_;
};

}  // namespace retrodiff::sde
