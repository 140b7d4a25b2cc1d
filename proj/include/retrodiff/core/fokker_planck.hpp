#pragma once

#include <functional>
#include <optional>

#include "retrodiff/core/guidance.hpp"
#include "retrodiff/core/husimi.hpp"
#include "retrodiff/core/marginal.hpp"
#include "retrodiff/core/model.hpp"

namespace retrodiff {

struct FokkerPlanckOptions {
  /// Time at the start of the step.
  double t = 0.0;
  /// When set, the q direction is advanced in forward-time form
  ///   -∂_q(ā2 Q) + ½ ∂_q²(b² Q),  ā2 = guidance_drift(model, μ, p, q, t),
  /// otherwise in the signed form -∂_q(a2 Q) - ½ ∂_q²(b² Q), which is only
  /// stable when b vanishes on the grid.
  std::optional<MarginalFlow> guidance;
  DriftConvention convention = DriftConvention::anderson;
};

/// Largest dt allowed by the explicit-scheme stability bounds
///   dt ≤ 0.2 min(Δp,Δq)² / max b²,   dt ≤ 0.2 min(Δp,Δq) / max|drift|.
[[nodiscard]] double fokker_planck_max_step(const HusimiGrid& density, const DiffusionModel& model,
                                            const FokkerPlanckOptions& options);

/// One explicit Euler step with conservative central differences; boundary
/// nodes are clamped to zero. StepSizeError when dt breaks a stability bound
/// (or the signed q-diffusion is active), CoverageError when more than 1e-8
/// of the mass sits on the boundary nodes.
[[nodiscard]] HusimiGrid fokker_planck_step(const HusimiGrid& density, const DiffusionModel& model, double dt,
                                            const FokkerPlanckOptions& options = {});

/// Repeats fokker_planck_step `n_steps` times from options.t.
[[nodiscard]] HusimiGrid fokker_planck_evolve(HusimiGrid density, const DiffusionModel& model, double dt,
                                              std::size_t n_steps, FokkerPlanckOptions options = {});

/// Trapezoidal ∫∫ |a - b| dp dq; both grids must share axes.
[[nodiscard]] double l1_distance(const HusimiGrid& a, const HusimiGrid& b);

/// ∫∫ Q dp dq and the first moments of a grid density.
struct GridMoments {
  double mass;
  double p_mean;
  double q_mean;
};
[[nodiscard]] GridMoments moments(const HusimiGrid& density);

}  // namespace retrodiff
