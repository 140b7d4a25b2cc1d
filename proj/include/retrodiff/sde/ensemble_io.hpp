#pragma once

#include <iosfwd>
#include <vector>

#include "retrodiff/sde/trajectory.hpp"

namespace retrodiff::sde {

/// Header `traj_id,t,p,q`, one row per (trajectory, node), 17 significant digits.
void write_ensemble_csv(std::ostream& out, const Ensemble& ensemble);

/// Ensemble CSV read back as a dense table.
struct EnsembleTable {
  std::vector<double> times;       ///< node times shared by every trajectory
  std::size_t n_traj = 0;
  std::vector<PhaseState> states;  ///< trajectory-major, n_traj × times.size()

  [[nodiscard]] std::vector<double> q_at(std::size_t node) const;
  [[nodiscard]] std::vector<double> p_at(std::size_t node) const;
  /// Index of the node at time t (within 1e-9); ConfigError if absent.
  [[nodiscard]] std::size_t node_at(double t) const;
};

/// ConfigError on malformed rows, missing header, or trajectories whose
/// time columns disagree.
[[nodiscard]] EnsembleTable read_ensemble_csv(std::istream& in);

}  // namespace retrodiff::sde
