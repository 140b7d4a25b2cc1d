#include "retrodiff/meanfield/particle_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "retrodiff/core/error.hpp"

namespace retrodiff::meanfield {

ParticleSystem::ParticleSystem(std::vector<double> positions, std::vector<double> momenta, MollifierKernel kernel,
                               double time)
    : positions_(std::move(positions)), momenta_(std::move(momenta)), kernel_(kernel), time_(time) {
  if (positions_.empty()) throw DomainError("meanfield: particle system is empty");
  if (momenta_.size() != positions_.size())
    throw DomainError("meanfield: positions and momenta differ in length");
  for (std::size_t i = 0; i < positions_.size(); ++i)
    if (!std::isfinite(positions_[i]) || !std::isfinite(momenta_[i]))
      throw DomainError("meanfield: particle " + std::to_string(i) + " left the finite range");
}

double ParticleSystem::mean_position() const {
  return std::accumulate(positions_.begin(), positions_.end(), 0.0) / static_cast<double>(positions_.size());
}

double mollified_density(const ParticleSystem& system, double x) {
  double sum = 0.0;
  for (double q : system.positions()) sum += system.kernel()(x - q);
  return sum / static_cast<double>(system.size());
}

double mollified_log_density(const ParticleSystem& system, double x) {
  const double h = system.kernel().bandwidth();
  const auto& qs = system.positions();
  double nearest = std::numeric_limits<double>::infinity();
  for (double q : qs) nearest = std::min(nearest, (x - q) * (x - q));
  double sum = 0.0;
  for (double q : qs) sum += std::exp(-0.5 * ((x - q) * (x - q) - nearest) / (h * h));
  return std::log(sum / static_cast<double>(qs.size())) - 0.5 * nearest / (h * h) -
         std::log(h * std::sqrt(2.0 * std::numbers::pi));
}

double mollified_score(const ParticleSystem& system, double x) {
  const double h2 = system.kernel().bandwidth() * system.kernel().bandwidth();
  const auto& qs = system.positions();
  double nearest = std::numeric_limits<double>::infinity();
  for (double q : qs) nearest = std::min(nearest, (x - q) * (x - q));
  double weight = 0.0, pull = 0.0;
  for (double q : qs) {
    const double d = x - q;
    const double w = std::exp(-0.5 * (d * d - nearest) / h2);
    weight += w;
    pull += w * d;
  }
  return -pull / (weight * h2);
}

std::string to_string(Interaction interaction) {
  return interaction == Interaction::mollified_score ? "mollified_score" : "harmonic_potential";
}

Interaction parse_interaction(std::string_view name) {
  if (name == "mollified_score") return Interaction::mollified_score;
  if (name == "harmonic_potential") return Interaction::harmonic_potential;
  throw ConfigError("interaction: unknown value '" + std::string(name) +
                    "' (expected mollified_score or harmonic_potential)");
}

double nsystem_drift(const DiffusionModel& model, const ParticleSystem& system, std::size_t i, double t,
                     DriftConvention convention) {
  require_p_independent_diffusion(model, "meanfield");
  const double p = system.momenta().at(i), q = system.positions().at(i);
  return drift_sign(convention) * model.a2(p, q, t) + model.db2_dq(p, q, t) +
         model.b2(p, q, t) * mollified_score(system, q);
}

std::vector<double> nsystem_drifts(const DiffusionModel& model, const ParticleSystem& system,
                                   const NSystemOptions& options) {
  require_p_independent_diffusion(model, "meanfield");
  const double t = system.time();
  std::vector<double> drifts(system.size());
  if (options.interaction == Interaction::mollified_score) {
    for (std::size_t i = 0; i < drifts.size(); ++i) drifts[i] = nsystem_drift(model, system, i, t, options.convention);
    return drifts;
  }
  // Harmonic pair force averaged over the particles: (1/N) Σ (q - q_j) = q - mean.
  const double centre = system.mean_position();
  for (std::size_t i = 0; i < drifts.size(); ++i) {
    const double p = system.momenta()[i], q = system.positions()[i];
    drifts[i] = drift_sign(options.convention) * model.a2(p, q, t) + model.db2_dq(p, q, t) -
                model.b2(p, q, t) * (q - centre);
  }
  return drifts;
}

ParticleNoise::ParticleNoise(const sde::RandomSource& rng, std::size_t n_particles) {
  position.reserve(n_particles);
  momentum.reserve(n_particles);
  for (std::size_t i = 0; i < n_particles; ++i) {
    position.push_back(rng.stream(i, sde::Channel::position));
    momentum.push_back(rng.stream(i, sde::Channel::momentum));
  }
}

ParticleSystem step_nsystem(const DiffusionModel& model, const ParticleSystem& system, double dt,
                            ParticleNoise& noise, const NSystemOptions& options) {
  if (!(dt > 0.0)) throw DomainError("meanfield: step needs dt > 0");
  if (system.size() < 2) throw DomainError("meanfield: the N-system needs N >= 2");
  if (noise.position.size() != system.size() || noise.momentum.size() != system.size())
    throw DomainError("meanfield: one noise stream per particle is required");
  const std::vector<double> drifts = nsystem_drifts(model, system, options);
  const double t = system.time(), sqdt = std::sqrt(dt);
  std::vector<double> qs(system.size()), ps(system.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double p = system.momenta()[i], q = system.positions()[i];
    const double b = model.b(p, q, t);
    qs[i] = q + drifts[i] * dt + b * sqdt * noise.position[i].next();
    ps[i] = p + model.a1(p, q, t) * dt + b * sqdt * noise.momentum[i].next();
  }
  return ParticleSystem(std::move(qs), std::move(ps), system.kernel(), t + dt);
}

ParticleSystem sample_particles(std::size_t n, const GaussianMarginal& p_law, const GaussianMarginal& q_law, double t,
                                MollifierKernel kernel, ParticleNoise& noise) {
  if (noise.position.size() < n) throw DomainError("meanfield: not enough noise streams for the sample");
  std::vector<double> qs(n), ps(n);
  const double qm = q_law.mean(t), qsd = std::sqrt(q_law.variance(t));
  const double pm = p_law.mean(t), psd = std::sqrt(p_law.variance(t));
  for (std::size_t i = 0; i < n; ++i) {
    qs[i] = qm + qsd * noise.position[i].next();
    ps[i] = pm + psd * noise.momentum[i].next();
  }
  return ParticleSystem(std::move(qs), std::move(ps), kernel, t);
}

}  // namespace retrodiff::meanfield
