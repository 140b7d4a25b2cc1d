#include "retrodiff/sde/integrators.hpp"

#include <cmath>
#include <utility>

#include "retrodiff/core/error.hpp"
#include "retrodiff/parallel.hpp"

namespace retrodiff::sde {
namespace {

// Product-form coefficients ignore the unused coordinate.
constexpr double kUnused = 0.0;

double sample(const GaussianMarginal& law, double t, NormalStream& stream) {
  return law.mean(t) + std::sqrt(law.variance(t)) * stream.next();
}

Trajectory recorded(const TimeGrid& grid, std::size_t stride, const std::vector<PhaseState>& full) {
  const TimeGrid coarse = grid.coarsened(stride);
  std::vector<PhaseState> kept;
  kept.reserve(coarse.n_nodes());
  for (std::size_t k = 0; k < full.size(); k += stride) kept.push_back(full[k]);
  return Trajectory(coarse, std::move(kept));
}

// Forward Euler-Maruyama for p along a known q-path.
void integrate_momentum(const DiffusionModel& model, const TimeGrid& grid, std::vector<PhaseState>& path,
                        NormalStream& noise) {
  const double dt = grid.dt(), sqdt = std::sqrt(dt);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double t = grid.time(k);
    const auto [p, q] = path[k];
    path[k + 1].p = p + model.a1(p, q, t) * dt + model.b(p, q, t) * sqdt * noise.next();
  }
}

}  // namespace

Trajectory integrate_retro(const DiffusionModel& model, const TimeGrid& grid, const BoundarySampler& sampler,
                           const RandomSource& rng, std::uint64_t traj_index, const IntegratorOptions& options) {
  if (!model.product_form())
    throw UnsupportedModelError("sde: retro integration needs a product-form model; '" + model.name() +
                                "' couples p and q");
  static_cast<void>(grid.coarsened(options.record_stride));  // validates the stride up front
  auto p_noise = rng.stream(traj_index, Channel::momentum);
  auto q_noise = rng.stream(traj_index, Channel::position);

  const std::size_t n = grid.n_steps();
  const double dt = grid.dt(), sqdt = std::sqrt(dt);
  std::vector<PhaseState> path(n + 1);

  // q runs in reversed time τ = tf - t from its future boundary value.
  path[n].q = sample(sampler.q_boundary, grid.tf(), q_noise);
  for (std::size_t k = n; k > 0; --k) {
    const double t = grid.time(k);
    const double q = path[k].q;
    path[k - 1].q = q - model.a2(kUnused, q, t) * dt - model.b(kUnused, q, t) * sqdt * q_noise.next();
  }

  path[0].p = sample(sampler.p_initial, grid.t0(), p_noise);
  integrate_momentum(model, grid, path, p_noise);
  return recorded(grid, options.record_stride, path);
}

Trajectory integrate_forward_guided(const DiffusionModel& model, const TimeGrid& grid,
                                    const BoundarySampler& sampler, const MarginalFlow& mu,
                                    const RandomSource& rng, std::uint64_t traj_index,
                                    const IntegratorOptions& options) {
  require_p_independent_diffusion(model, "sde");
  static_cast<void>(grid.coarsened(options.record_stride));  // validates the stride up front
  auto p_noise = rng.stream(traj_index, Channel::momentum);
  auto q_noise = rng.stream(traj_index, Channel::position);

  const std::size_t n = grid.n_steps();
  const double dt = grid.dt(), sqdt = std::sqrt(dt);
  std::vector<PhaseState> path(n + 1);
  path[0].p = sample(sampler.p_initial, grid.t0(), p_noise);
  path[0].q = sample(sampler.q_boundary, grid.t0(), q_noise);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = grid.time(k);
    const auto [p, q] = path[k];
    const double b = model.b(p, q, t);
    path[k + 1].p = p + model.a1(p, q, t) * dt + b * sqdt * p_noise.next();
    path[k + 1].q = q + guidance_drift(model, mu, p, q, t, options.convention) * dt + b * sqdt * q_noise.next();
  }
  return recorded(grid, options.record_stride, path);
}

Trajectory integrate_deterministic(const DiffusionModel& model, const TimeGrid& grid, PhaseState initial,
                                   const IntegratorOptions& options) {
  static_cast<void>(grid.coarsened(options.record_stride));  // validates the stride up front
  const std::size_t n = grid.n_steps();
  const double dt = grid.dt();
  const double sign = drift_sign(options.convention);
  std::vector<PhaseState> path(n + 1);
  path[0] = initial;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = grid.time(k);
    const auto [p, q] = path[k];
    if (model.b(p, q, t) != 0.0)
      throw UnsupportedModelError("sde: deterministic flow needs b = 0; model '" + model.name() +
                                  "' diffuses at t=" + std::to_string(t));
    path[k + 1] = {p + model.a1(p, q, t) * dt, q + sign * model.a2(p, q, t) * dt};
  }
  return recorded(grid, options.record_stride, path);
}

Ensemble simulate_ensemble(Mode mode, const DiffusionModel& model, const TimeGrid& grid,
                           const BoundarySampler& sampler, const std::optional<MarginalFlow>& mu,
                           std::size_t n_traj, std::uint64_t master_seed, const EnsembleOptions& options) {
  if (n_traj == 0) throw DomainError("sde: ensemble needs n_traj >= 1");
  if (mode == Mode::forward_guided && !mu)
    throw DomainError("sde: forward_guided ensemble needs a marginal density flow");
  const RandomSource rng(master_seed);
  const IntegratorOptions single{options.record_stride, options.convention};

  std::vector<std::optional<Trajectory>> slots(n_traj);
  parallel_for(n_traj, options.threads, [&](std::size_t i) {
    switch (mode) {
      case Mode::retro:
        slots[i].emplace(integrate_retro(model, grid, sampler, rng, i, single));
        break;
      case Mode::forward_guided:
        slots[i].emplace(integrate_forward_guided(model, grid, sampler, *mu, rng, i, single));
        break;
      case Mode::deterministic: {
        auto p_noise = rng.stream(i, Channel::momentum);
        auto q_noise = rng.stream(i, Channel::position);
        const PhaseState start{sample(sampler.p_initial, grid.t0(), p_noise),
                               sample(sampler.q_boundary, grid.t0(), q_noise)};
        slots[i].emplace(integrate_deterministic(model, grid, start, single));
        break;
      }
    }
  });

  std::vector<Trajectory> trajectories;
  trajectories.reserve(n_traj);
  for (auto& s : slots) trajectories.push_back(std::move(*s));
  return Ensemble(std::move(trajectories), model.name(), mode, master_seed);
}

}  // namespace retrodiff::sde
