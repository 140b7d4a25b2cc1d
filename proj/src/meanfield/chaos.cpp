#include "retrodiff/meanfield/chaos.hpp"

#include <algorithm>
#include <cmath>

#include "retrodiff/core/error.hpp"
#include "retrodiff/metrics/distances.hpp"
#include "retrodiff/metrics/statistics.hpp"
#include "retrodiff/parallel.hpp"

namespace retrodiff::meanfield {

ParticleSystem run_nsystem(const DiffusionModel& model, const sde::BoundarySampler& sampler, std::size_t n_particles,
                           const TimeGrid& grid, const sde::RandomSource& rng, const ChaosOptions& options,
                           const SnapshotObserver& observer) {
  ParticleNoise noise(rng, n_particles);
  ParticleSystem system = sample_particles(n_particles, sampler.p_initial, sampler.q_boundary, grid.t0(),
                                           MollifierKernel(options.bandwidth.bandwidth(n_particles)), noise);
  if (observer) observer(0, system);
  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    system = step_nsystem(model, system, grid.dt(), noise, options.dynamics);
    if (observer) observer(k + 1, system);
  }
  return system;
}

double mollified_w1_to_normal(const ParticleSystem& system, double mean, double variance) {
  const double sd = std::sqrt(variance);
  const double h = system.kernel().bandwidth();
  std::vector<double> sorted = system.positions();
  std::sort(sorted.begin(), sorted.end());
  const double lo = std::min(sorted.front() - 10.0 * h, mean - 10.0 * sd);
  const double hi = std::max(sorted.back() + 10.0 * h, mean + 10.0 * sd);
  // Resolve the narrower of the two scales, within a fixed budget.
  const double spacing = std::min(h, sd) / 8.0;
  const auto n = static_cast<std::size_t>(std::clamp(std::ceil((hi - lo) / spacing), 2000.0, 4e5)) + 1;
  const UniformGrid grid(lo, hi, n);

  // Kernel CDF is 0 below -10h and 1 above +10h; only a sliding window of
  // particles needs evaluating at each x.
  const double reach = 10.0 * h;
  std::vector<double> gap(grid.size());
  const double inv_n = 1.0 / static_cast<double>(sorted.size());
  std::size_t below = 0, window_end = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid[k];
    while (below < sorted.size() && sorted[below] < x - reach) ++below;
    while (window_end < sorted.size() && sorted[window_end] <= x + reach) ++window_end;
    double mixture = static_cast<double>(below);
    for (std::size_t i = below; i < window_end; ++i) mixture += system.kernel().cdf(x - sorted[i]);
    const double target = 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
    gap[k] = std::abs(mixture * inv_n - target);
  }
  return trapezoid(gap, grid.step());
}

nlohmann::ordered_json ChaosReport::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["N_list"] = n_list;
  j["n_reps"] = n_reps;
  j["bandwidth_rule"] = bandwidth_rule;
  j["interaction"] = interaction;
  auto column = [&](auto field) {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.*field);
    return out;
  };
  j["bandwidth"] = column(&ChaosRow::bandwidth);
  j["w1_mean"] = column(&ChaosRow::w1_mean);
  j["w1_stderr"] = column(&ChaosRow::w1_stderr);
  j["w1_mollified_mean"] = column(&ChaosRow::w1_mollified_mean);
  j["w1_mollified_stderr"] = column(&ChaosRow::w1_mollified_stderr);
  j["loglog_slope"] = loglog_slope ? nlohmann::ordered_json(*loglog_slope) : nlohmann::ordered_json(nullptr);
  j["w1_strictly_decreasing"] = w1_strictly_decreasing();
  j["seed"] = seed;
  return j;
}

bool ChaosReport::w1_strictly_decreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].w1_mean < rows[i - 1].w1_mean)) return false;
  return true;
}

ChaosReport chaos_experiment(const DiffusionModel& model, const sde::BoundarySampler& sampler,
                             const std::vector<std::size_t>& n_list, std::size_t n_reps, const TimeGrid& grid,
                             std::uint64_t master_seed, const ChaosOptions& options) {
  if (n_list.empty()) throw DomainError("meanfield: N_list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 10) throw DomainError("meanfield: every N in N_list must be >= 10");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw DomainError("meanfield: N_list must be strictly increasing");
  }
  if (n_reps == 0) throw DomainError("meanfield: n_reps must be >= 1");

  const double target_mean = sampler.q_boundary.mean(grid.tf());
  const double target_var = sampler.q_boundary.variance(grid.tf());
  const sde::RandomSource root(master_seed);

  ChaosReport report{model.name(), n_list, n_reps, options.bandwidth.to_string(),
                     to_string(options.dynamics.interaction), {}, std::nullopt, master_seed};
  for (std::size_t n : n_list) {
    std::vector<double> w1(n_reps), w1_mollified(n_reps);
    parallel_for(n_reps, options.threads, [&](std::size_t r) {
      const auto final = run_nsystem(model, sampler, n, grid, root.child(n).child(r), options);
      w1[r] = metrics::wasserstein1_to_normal(metrics::SampleSet(final.positions()), target_mean, target_var);
      w1_mollified[r] = mollified_w1_to_normal(final, target_mean, target_var);
    });
    ChaosRow row{n, options.bandwidth.bandwidth(n), metrics::mean(w1), 0.0, metrics::mean(w1_mollified), 0.0};
    if (n_reps > 1) {
      row.w1_stderr = metrics::standard_error(w1);
      row.w1_mollified_stderr = metrics::standard_error(w1_mollified);
    }
    report.rows.push_back(row);
  }
  if (n_list.size() >= 2) {
    std::vector<double> xs, ys;
    for (const auto& r : report.rows) {
      xs.push_back(static_cast<double>(r.n_particles));
      ys.push_back(r.w1_mean);
    }
    report.loglog_slope = metrics::loglog_slope(metrics::ConvergenceSeries(xs, ys));
  }
  return report;
}

double decoupling_correlation(const DiffusionModel& model, const sde::BoundarySampler& sampler,
                              std::size_t n_particles, std::size_t n_runs, const TimeGrid& grid,
                              std::uint64_t master_seed, const ChaosOptions& options) {
  if (n_runs < 3) throw DomainError("meanfield: correlation needs at least 3 runs");
  const sde::RandomSource root(master_seed);
  std::vector<double> first(n_runs), second(n_runs);
  parallel_for(n_runs, options.threads, [&](std::size_t r) {
    const auto final = run_nsystem(model, sampler, n_particles, grid, root.child(r), options);
    first[r] = final.positions()[0];
    second[r] = final.positions()[1];
  });
  return metrics::correlation(first, second);
}

}  // namespace retrodiff::meanfield
