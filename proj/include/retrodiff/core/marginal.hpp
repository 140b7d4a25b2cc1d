#pragma once

#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "retrodiff/core/grid.hpp"
#include "retrodiff/core/husimi.hpp"

namespace retrodiff {

/// Time-dependent Gaussian density N(mean(t), variance(t)).
class GaussianMarginal {
 public:
  using TimeFunction = std::function<double(double t)>;

  GaussianMarginal(TimeFunction mean, TimeFunction variance);
  static GaussianMarginal constant_variance(TimeFunction mean, double variance);
  static GaussianMarginal stationary(double mean, double variance);

  /// DomainError when the mean is not finite or the variance not positive at t.
  [[nodiscard]] double mean(double t) const;
  [[nodiscard]] double variance(double t) const;
  [[nodiscard]] double density(double q, double t) const;
  [[nodiscard]] double cdf(double q, double t) const;
  /// ∂_q log density = -(q - m(t)) / σ²(t).
  [[nodiscard]] double score(double q, double t) const;

 private:
  TimeFunction mean_;
  TimeFunction variance_;
};

/// Product-form Gaussian phase-space density. For the amplifier:
/// p-mean p0 e^{-t}, q-mean q0 e^{t}, both variances 1.
struct GaussianPhaseSolution {
  double p_mean0 = 0.0;
  double q_mean0 = 0.0;
  double variance = 1.0;
  GaussianMarginal p_marginal;
  GaussianMarginal q_marginal;

  [[nodiscard]] double density(double p, double q, double t) const {
    return p_marginal.density(p, t) * q_marginal.density(q, t);
  }
};

[[nodiscard]] GaussianPhaseSolution amplifier_solution(double p0, double q0);

/// Evaluates a product-form solution on a grid at time t.
[[nodiscard]] HusimiGrid tabulate(const GaussianPhaseSolution& solution, const UniformGrid& p_grid,
                                  const UniformGrid& q_grid, double t, double hbar = 1.0);

/// Sampled 1-D density.
class DensityGrid1D {
 public:
  DensityGrid1D(UniformGrid q_grid, std::vector<double> values);

  [[nodiscard]] const UniformGrid& q_grid() const noexcept { return q_grid_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] double integral() const;
  /// Linear interpolation; SupportError outside the grid.
  [[nodiscard]] double density(double q) const;
  /// Central difference of log values at the nodes, interpolated linearly.
  /// SupportError where the density is below 1e-30.
  [[nodiscard]] double score(double q) const;

 private:
  UniformGrid q_grid_;
  std::vector<double> values_;
};

/// ∫ Q dp by trapezoid. CoverageError when the result is not normalized
/// within `tolerance`.
[[nodiscard]] DensityGrid1D marginal_q(const HusimiGrid& density, double tolerance = 1e-4);

/// q-marginal flow μ_t used by the guided dynamics.
using MarginalFlow = std::variant<GaussianMarginal, DensityGrid1D>;

[[nodiscard]] double score(const GaussianMarginal& mu, double q, double t);
/// The grid is a snapshot; t is ignored.
[[nodiscard]] double score(const DensityGrid1D& mu, double q, double t);
[[nodiscard]] double score(const MarginalFlow& mu, double q, double t);

}  // namespace retrodiff

namespace retrodiff {

/// Free evolution of the unit-variance Gaussian N(p0,1)×N(q0,1) (the Husimi
/// density of a coherent state at ħ = 1): q-marginal N(q0 + p0 t/m, 1 + t²/m²).
[[nodiscard]] GaussianMarginal free_particle_q_marginal(double p0, double q0, double mass);

/// Joint density of the same flow, Q_t(p, q) = N(p; p0, 1) N(q - p t/m; q0, 1).
[[nodiscard]] double free_particle_density(double p0, double q0, double mass, double p, double q, double t);

}  // namespace retrodiff
