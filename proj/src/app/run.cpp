#include "retrodiff/app/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "retrodiff/app/digest.hpp"
#include "retrodiff/core/error.hpp"
#include "retrodiff/core/fokker_planck.hpp"
#include "retrodiff/core/husimi.hpp"
#include "retrodiff/core/serialize.hpp"
#include "retrodiff/meanfield/chaos.hpp"
#include "retrodiff/metrics/distances.hpp"
#include "retrodiff/metrics/statistics.hpp"
#include "retrodiff/sde/ensemble_io.hpp"
#include "retrodiff/sde/integrators.hpp"

namespace retrodiff::app {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("app: cannot write '" + path.string() + "'");
  return out;
}

void write_json(const fs::path& path, const ordered_json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class RunRecorder {
 public:
  RunRecorder(const ScenarioConfig& config, std::string command)
      : config_(config), command_(std::move(command)), started_(utc_now()),
        clock_(std::chrono::steady_clock::now()), dir_(config.out_dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error("app: cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  [[nodiscard]] fs::path path(const std::string& name) const { return dir_ / name; }

  void add(const fs::path& file) { result_.outputs.push_back(file); }

  RunResult finish(ordered_json metrics, const std::string& metrics_name = "metrics.json") {
    const fs::path metrics_path = path(metrics_name);
    write_json(metrics_path, metrics);
    add(metrics_path);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_).count();
    ordered_json files = ordered_json::array();
    for (const auto& f : result_.outputs)
      files.push_back({{"path", f.filename().string()}, {"sha256", sha256_file(f)}});
    ordered_json manifest;
    manifest["tool"] = "retrodiff";
    manifest["version"] = kVersion;
    manifest["command"] = command_;
    manifest["config"] = config_.to_json();
    manifest["started_utc"] = started_;
    manifest["duration_s"] = seconds;
    manifest["outputs"] = files;
    result_.manifest = path("manifest.json");
    write_json(result_.manifest, manifest);
    result_.metrics = std::move(metrics);
    return std::move(result_);
  }

 private:
  const ScenarioConfig& config_;
  std::string command_;
  std::string started_;
  std::chrono::steady_clock::time_point clock_;
  fs::path dir_;
  RunResult result_;
};

TimeGrid time_grid(const ScenarioConfig& c) {
  try {
    return TimeGrid(c.t0, c.tf, c.dt);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("dt: ") + e.what());
  }
}

ordered_json cross_section(double t, const std::vector<double>& q, const std::vector<double>& p,
                           const Scenario& s) {
  const metrics::SampleSet qs(q, "q");
  const metrics::SampleSet ps(p, "p");
  const double qm = s.q_law.mean(t), qv = s.q_law.variance(t);
  ordered_json row;
  row["t"] = t;
  row["q_mean"] = metrics::mean(q);
  row["q_var"] = q.size() > 1 ? metrics::variance(q) : 0.0;
  row["p_mean"] = metrics::mean(p);
  row["p_var"] = p.size() > 1 ? metrics::variance(p) : 0.0;
  row["q_mean_exact"] = qm;
  row["q_var_exact"] = qv;
  row["w1_q"] = metrics::wasserstein1_to_normal(qs, qm, qv);
  row["w1_p"] = metrics::wasserstein1_to_normal(ps, s.p_law.mean(t), s.p_law.variance(t));
  row["ks_q"] = metrics::ks_statistic(qs, [&](double x) { return s.q_law.cdf(x, t); });
  return row;
}

RunResult run_trajectories(const ScenarioConfig& c, const Scenario& s) {
  RunRecorder rec(c, "simulate");
  const TimeGrid grid = time_grid(c);
  const sde::Mode mode = sde::parse_mode(c.mode);
  std::optional<MarginalFlow> mu;
  if (mode == sde::Mode::forward_guided) mu = MarginalFlow(s.q_law);
  const sde::EnsembleOptions opts{c.record_stride, parse_drift_convention(c.drift_convention), c.threads};
  const sde::Ensemble ens = sde::simulate_ensemble(mode, s.model, grid, s.sampler, mu, c.n_traj, c.seed, opts);

  const fs::path csv = rec.path("trajectories.csv");
  {
    auto out = open_output(csv);
    sde::write_ensemble_csv(out, ens);
  }
  rec.add(csv);

  ordered_json m;
  m["scenario"] = c.scenario;
  m["mode"] = c.mode;
  m["drift_sign_convention"] = c.drift_convention;
  m["n_traj"] = c.n_traj;
  ordered_json nodes = ordered_json::array();
  const TimeGrid& rg = ens.grid();
  for (std::size_t k = 0; k < rg.n_nodes(); ++k) nodes.push_back(cross_section(rg.time(k), ens.q_at(k), ens.p_at(k), s));
  m["nodes"] = nodes;
  m["final"] = nodes.back();
  if (mode != sde::Mode::retro && c.scenario == "free_particle") {
    // Noise-free and linear in t, so Euler reproduces q(t0) + p(t0)(t - t0)/m.
    double worst = 0.0;
    for (const auto& tr : ens.trajectories()) {
      const PhaseState& s0 = tr.at(0);
      for (std::size_t k = 0; k < rg.n_nodes(); ++k) {
        const PhaseState& sk = tr.at(k);
        const double q_exact = s0.q + s0.p * (rg.time(k) - rg.t0()) / c.mass;
        worst = std::max({worst, std::abs(sk.q - q_exact), std::abs(sk.p - s0.p)});
      }
    }
    m["max_flow_error"] = worst;
  }
  return rec.finish(std::move(m));
}

RunResult run_meanfield(const ScenarioConfig& c, const Scenario& s) {
  RunRecorder rec(c, "simulate");
  const TimeGrid grid = time_grid(c);
  static_cast<void>(grid.coarsened(c.record_stride));  // validates the stride up front
  meanfield::ChaosOptions opts;
  opts.bandwidth = meanfield::BandwidthRule::parse(c.bandwidth_rule);
  opts.dynamics = {parse_drift_convention(c.drift_convention), meanfield::parse_interaction(c.interaction)};
  opts.threads = c.threads;

  const fs::path csv = rec.path("particles.csv");
  auto out = open_output(csv);
  out << "step,particle_id,q,p\n";
  const auto observer = [&](std::size_t step, const meanfield::ParticleSystem& sys) {
    if (step % c.record_stride != 0) return;
    for (std::size_t i = 0; i < sys.size(); ++i)
      out << step << ',' << i << ',' << format_double(sys.positions()[i]) << ',' << format_double(sys.momenta()[i])
          << '\n';
  };
  const meanfield::ParticleSystem final =
      meanfield::run_nsystem(s.model, s.sampler, c.n_particles, grid, sde::RandomSource(c.seed), opts, observer);
  out.close();
  rec.add(csv);

  const double t = grid.tf();
  ordered_json m;
  m["scenario"] = c.scenario;
  m["mode"] = c.mode;
  m["drift_sign_convention"] = c.drift_convention;
  m["interaction"] = c.interaction;
  m["n_particles"] = c.n_particles;
  m["bandwidth_rule"] = c.bandwidth_rule;
  m["bandwidth"] = final.kernel().bandwidth();
  ordered_json fin = cross_section(t, final.positions(), final.momenta(), s);
  fin["w1_q_mollified"] = meanfield::mollified_w1_to_normal(final, s.q_law.mean(t), s.q_law.variance(t));
  m["final"] = fin;
  return rec.finish(std::move(m));
}

HusimiGrid tabulate_joint(const Scenario& s, const UniformGrid& pg, const UniformGrid& qg, double t) {
  std::vector<double> v(pg.size() * qg.size());
  for (std::size_t i = 0; i < pg.size(); ++i)
    for (std::size_t j = 0; j < qg.size(); ++j) v[i * qg.size() + j] = s.joint_density(pg[i], qg[j], t);
  return HusimiGrid(pg, qg, std::move(v), 1.0);
}

RunResult run_fp_oracle(const ScenarioConfig& c, const Scenario& s) {
  RunRecorder rec(c, "fp-oracle");
  constexpr double kReach = 7.0;  // standard deviations kept inside the box
  const auto span = [&](const GaussianMarginal& law) {
    double lo = 1e300, hi = -1e300;
    for (double t : {c.t0, 0.5 * (c.t0 + c.tf), c.tf}) {
      const double sd = std::sqrt(law.variance(t));
      lo = std::min(lo, law.mean(t) - kReach * sd);
      hi = std::max(hi, law.mean(t) + kReach * sd);
    }
    return UniformGrid(lo, hi, c.grid_points);
  };
  const UniformGrid pg = span(s.p_law);
  const UniformGrid qg = span(s.q_law);
  // Forward Euler with central differences amplifies every Fourier mode of
  // pure advection, so the oracle needs diffusion on the grid.
  if (s.model.b2(pg[pg.size() / 2], qg[qg.size() / 2], c.t0) == 0.0)
    throw UnsupportedModelError("app: fp_oracle needs b > 0; the explicit central scheme is unstable for the "
                                "pure advection of model '" + s.model.name() + "'");
  const HusimiGrid initial = tabulate_joint(s, pg, qg, c.t0);
  const HusimiGrid exact = tabulate_joint(s, pg, qg, c.tf);

  const DriftConvention conv = parse_drift_convention(c.drift_convention);
  FokkerPlanckOptions fp{c.t0, MarginalFlow(s.q_law), conv};
  double dt = c.fp_dt;
  std::size_t n_steps = 0;
  if (dt > 0.0) {
    try {
      n_steps = TimeGrid(c.t0, c.tf, dt).n_steps();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("fp_dt: ") + e.what());
    }
  } else {
    double bound = fokker_planck_max_step(initial, s.model, fp);
    FokkerPlanckOptions late = fp;
    late.t = c.tf;
    bound = std::min(bound, fokker_planck_max_step(exact, s.model, late));
    n_steps = static_cast<std::size_t>(std::ceil((c.tf - c.t0) / bound));
    dt = (c.tf - c.t0) / static_cast<double>(n_steps);
  }
  const HusimiGrid numeric = fokker_planck_evolve(initial, s.model, dt, n_steps, fp);
  const double l1 = l1_distance(numeric, exact);
  const GridMoments mom = moments(numeric);

  const fs::path csv = rec.path("fp_marginal_q.csv");
  {
    auto out = open_output(csv);
    write_csv(out, marginal_q(numeric, 1e-2));
  }
  rec.add(csv);

  ordered_json m;
  m["scenario"] = c.scenario;
  m["mode"] = "fp_oracle";
  m["drift_sign_convention"] = c.drift_convention;
  m["grid_points"] = c.grid_points;
  m["p_range"] = {pg.start(), pg.stop()};
  m["q_range"] = {qg.start(), qg.stop()};
  m["dt"] = dt;
  m["n_steps"] = n_steps;
  m["l1_error"] = l1;
  m["convention_inconsistent"] = l1 >= 1e-3;
  m["mass"] = mom.mass;
  m["p_mean"] = mom.p_mean;
  m["q_mean"] = mom.q_mean;
  m["p_mean_exact"] = s.p_law.mean(c.tf);
  m["q_mean_exact"] = s.q_law.mean(c.tf);
  return rec.finish(std::move(m));
}

}  // namespace

Scenario make_scenario(const ScenarioConfig& c) {
  if (c.scenario == "amplifier") {
    GaussianPhaseSolution sol = amplifier_solution(c.p0, c.q0);
    auto joint = [sol](double p, double q, double t) { return sol.density(p, q, t); };
    return Scenario{amplifier_model(), sde::amplifier_sampler(c.p0, c.q0), sol.q_marginal, sol.p_marginal,
                    std::move(joint)};
  }
  if (c.scenario == "free_particle") {
    const double p0 = c.p0, q0 = c.q0, m = c.mass;
    auto joint = [=](double p, double q, double t) { return free_particle_density(p0, q0, m, p, q, t); };
    return Scenario{free_particle_model(m), sde::free_particle_sampler(p0, q0, m), free_particle_q_marginal(p0, q0, m),
                    GaussianMarginal::stationary(p0, 1.0), std::move(joint)};
  }
  throw ConfigError("scenario: unknown value '" + c.scenario + "'");
}

RunResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const Scenario s = make_scenario(config);
  if (config.mode == "meanfield") return run_meanfield(config, s);
  if (config.mode == "fp_oracle") return run_fp_oracle(config, s);
  return run_trajectories(config, s);
}

RunResult run_chaos(const ScenarioConfig& config) {
  config.validate();
  const Scenario s = make_scenario(config);
  RunRecorder rec(config, "chaos");
  meanfield::ChaosOptions opts;
  opts.bandwidth = meanfield::BandwidthRule::parse(config.bandwidth_rule);
  opts.dynamics = {parse_drift_convention(config.drift_convention), meanfield::parse_interaction(config.interaction)};
  opts.threads = config.threads;
  meanfield::ChaosReport report;
  try {
    report = meanfield::chaos_experiment(s.model, s.sampler, config.n_list, config.n_reps, time_grid(config),
                                         config.seed, opts);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("n_list: ") + e.what());
  }
  return rec.finish(report.to_json(), "chaos_report.json");
}

void run_husimi(const HusimiRequest& r) {
  if (!(r.hbar > 0.0)) throw ConfigError("hbar: must be > 0");
  if (r.points < 11) throw ConfigError("points: must be >= 11");
  const double w = std::sqrt(r.hbar);
  const auto nx = static_cast<std::size_t>(std::ceil(20.0 * 8.0)) * 2 + 1;
  const UniformGrid xg(r.q0 - 10.0 * w, r.q0 + 10.0 * w, nx);
  const Wavefunction psi = coherent_state(r.p0, r.q0, r.hbar, xg);
  const UniformGrid pg(r.p0 - 6.0 * w, r.p0 + 6.0 * w, r.points);
  const UniformGrid qg(r.q0 - 6.0 * w, r.q0 + 6.0 * w, r.points);
  const HusimiGrid q = husimi(psi, pg, qg);
  if (r.out.has_parent_path()) fs::create_directories(r.out.parent_path());
  auto out = open_output(r.out);
  write_csv(out, q);
}

}  // namespace retrodiff::app
