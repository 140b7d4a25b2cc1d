#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "retrodiff/core/guidance.hpp"
#include "retrodiff/core/marginal.hpp"
#include "retrodiff/core/model.hpp"
#include "retrodiff/meanfield/kernel.hpp"
#include "retrodiff/sde/random.hpp"

namespace retrodiff::meanfield {

/// N particles q_i with their momenta, sharing one mollifier.
class ParticleSystem {
 public:
  /// DomainError for empty or mismatched vectors and non-finite positions.
  ParticleSystem(std::vector<double> positions, std::vector<double> momenta, MollifierKernel kernel, double time);

  [[nodiscard]] const std::vector<double>& positions() const noexcept { return positions_; }
  [[nodiscard]] const std::vector<double>& momenta() const noexcept { return momenta_; }
  [[nodiscard]] const MollifierKernel& kernel() const noexcept { return kernel_; }
  [[nodiscard]] double time() const noexcept { return time_; }
  [[nodiscard]] std::size_t size() const noexcept { return positions_.size(); }
  [[nodiscard]] double mean_position() const;

 private:
  std::vector<double> positions_;
  std::vector<double> momenta_;
  MollifierKernel kernel_;
  double time_;
};

/// (1/N) Σ K(x - q_i).
[[nodiscard]] double mollified_density(const ParticleSystem& system, double x);

/// log of the mollified density, finite wherever the exact density is
/// positive even when the density itself underflows.
[[nodiscard]] double mollified_log_density(const ParticleSystem& system, double x);
/// ∂_x log of the mollified density, evaluated with a log-sum-exp so that
/// narrow kernels far from every particle stay finite.
[[nodiscard]] double mollified_score(const ParticleSystem& system, double x);

/// How the N-system realizes the guidance term.
///   mollified_score:    b² ∂_q log μ̃^N   (kernel-smoothed empirical measure)
///   harmonic_potential: -b² ∂_q ⟨Ṽ^N(q,·)⟩_{μ^N} with V = ½(q-x)²
enum class Interaction { mollified_score, harmonic_potential };

[[nodiscard]] std::string to_string(Interaction interaction);
[[nodiscard]] Interaction parse_interaction(std::string_view name);

/// ā2^N(q_i) = ±a2 + ∂_q b² + b² ∂_q log μ̃^N at particle i.
/// UnsupportedModelError if b depends on p.
[[nodiscard]] double nsystem_drift(const DiffusionModel& model, const ParticleSystem& system, std::size_t i,
                                   double t, DriftConvention convention = DriftConvention::anderson);

struct NSystemOptions {
  DriftConvention convention = DriftConvention::anderson;
  Interaction interaction = Interaction::mollified_score;
};

/// Drifts of every particle against one configuration snapshot.
[[nodiscard]] std::vector<double> nsystem_drifts(const DiffusionModel& model, const ParticleSystem& system,
                                                 const NSystemOptions& options = {});

/// Per-particle noise streams; element i drives particle i.
struct ParticleNoise {
  std::vector<sde::NormalStream> position;
  std::vector<sde::NormalStream> momentum;

  ParticleNoise(const sde::RandomSource& rng, std::size_t n_particles);
};

/// Synchronous Euler-Maruyama step: drifts from the current snapshot, then
///   q_i += ā2^N dt + b √dt ξ_i,  p_i += a1 dt + b √dt η_i.
[[nodiscard]] ParticleSystem step_nsystem(const DiffusionModel& model, const ParticleSystem& system, double dt,
                                          ParticleNoise& noise, const NSystemOptions& options = {});

/// N iid draws from the boundary laws at time t.
[[nodiscard]] ParticleSystem sample_particles(std::size_t n, const GaussianMarginal& p_law,
                                              const GaussianMarginal& q_law, double t, MollifierKernel kernel,
                                              ParticleNoise& noise);

}  // namespace retrodiff::meanfield
