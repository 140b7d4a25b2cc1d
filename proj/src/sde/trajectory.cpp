#include "retrodiff/sde/trajectory.hpp"

#include <utility>

#include "retrodiff/core/error.hpp"

namespace retrodiff::sde {

Trajectory::Trajectory(TimeGrid grid, std::vector<PhaseState> states)
    : grid_(std::move(grid)), states_(std::move(states)) {
  if (states_.size() != grid_.n_nodes())
    throw DomainError("sde: trajectory has " + std::to_string(states_.size()) + " states for " +
                      std::to_string(grid_.n_nodes()) + " grid nodes");
  for (const auto& s : states_)
    if (!s.finite()) throw DomainError("sde: trajectory left the finite range (diverged)");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::retro: return "retro";
    case Mode::forward_guided: return "forward_guided";
    case Mode::deterministic: return "deterministic";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  if (name == "retro") return Mode::retro;
  if (name == "forward_guided") return Mode::forward_guided;
  if (name == "deterministic") return Mode::deterministic;
  throw ConfigError("mode: unknown value '" + std::string(name) + "'");
}

BoundarySampler amplifier_sampler(double p0, double q0) {
  auto solution = amplifier_solution(p0, q0);
  return {solution.p_marginal, solution.q_marginal};
}

BoundarySampler free_particle_sampler(double p0, double q0, double mass) {
  return {GaussianMarginal::stationary(p0, 1.0), free_particle_q_marginal(p0, q0, mass)};
}

Ensemble::Ensemble(std::vector<Trajectory> trajectories, std::string model_name, Mode mode,
                   std::uint64_t master_seed)
    : trajectories_(std::move(trajectories)), model_name_(std::move(model_name)), mode_(mode),
      master_seed_(master_seed) {
  if (trajectories_.empty()) throw DomainError("sde: ensemble needs at least one trajectory");
  for (const auto& tr : trajectories_)
    if (!(tr.grid() == trajectories_.front().grid()))
      throw DomainError("sde: ensemble trajectories must share one time grid");
}

std::vector<double> Ensemble::q_at(std::size_t node) const {
  std::vector<double> out;
  out.reserve(trajectories_.size());
  for (const auto& tr : trajectories_) out.push_back(tr.at(node).q);
  return out;
}

std::vector<double> Ensemble::p_at(std::size_t node) const {
  std::vector<double> out;
  out.reserve(trajectories_.size());
  for (const auto& tr : trajectories_) out.push_back(tr.at(node).p);
  return out;
}

}  // namespace retrodiff::sde
