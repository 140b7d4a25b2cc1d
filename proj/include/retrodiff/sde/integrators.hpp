#pragma once

#include <cstdint>
#include <optional>

#include "retrodiff/core/guidance.hpp"
#include "retrodiff/core/model.hpp"
#include "retrodiff/sde/random.hpp"
#include "retrodiff/sde/trajectory.hpp"

namespace retrodiff::sde {

struct IntegratorOptions {
  /// Keep every `record_stride`-th node; the trajectory grid is coarsened accordingly.
  std::size_t record_stride = 1;
  DriftConvention convention = DriftConvention::anderson;
};

/// Euler-Maruyama for the pair with a future boundary:
///   p forward from p(t0):  p_{k+1} = p_k + a1 dt + b √dt ξ
///   q backward from q(tf): q_{k-1} = q_k - a2 dt - b √dt ξ'
/// with independent streams for ξ and ξ'. Product-form models only.
[[nodiscard]] Trajectory integrate_retro(const DiffusionModel& model, const TimeGrid& grid,
                                         const BoundarySampler& sampler, const RandomSource& rng,
                                         std::uint64_t traj_index, const IntegratorOptions& options = {});

/// Forward-time guided pair: p as above, q forward from q(t0) with drift
/// guidance_drift(model, μ, p, q, t) and amplitude b.
[[nodiscard]] Trajectory integrate_forward_guided(const DiffusionModel& model, const TimeGrid& grid,
                                                  const BoundarySampler& sampler, const MarginalFlow& mu,
                                                  const RandomSource& rng, std::uint64_t traj_index,
                                                  const IntegratorOptions& options = {});

/// Noise-free Euler flow dp = a1 dt, dq = a2 dt (sign per convention) from a
/// fixed initial state. UnsupportedModelError if b is nonzero on the path.
[[nodiscard]] Trajectory integrate_deterministic(const DiffusionModel& model, const TimeGrid& grid,
                                                 PhaseState initial, const IntegratorOptions& options = {});

struct EnsembleOptions {
  std::size_t record_stride = 1;
  DriftConvention convention = DriftConvention::anderson;
  /// 0 = hardware concurrency. Output does not depend on this.
  unsigned threads = 0;
};

/// n_traj independent trajectories; trajectory i draws from stream i.
/// forward_guided requires `mu`.
[[nodiscard]] Ensemble simulate_ensemble(Mode mode, const DiffusionModel& model, const TimeGrid& grid,
                                         const BoundarySampler& sampler, const std::optional<MarginalFlow>& mu,
                                         std::size_t n_traj, std::uint64_t master_seed,
                                         const EnsembleOptions& options = {});

}  // namespace retrodiff::sde
