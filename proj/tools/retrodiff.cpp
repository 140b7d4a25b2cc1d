// Command-line front end: simulate, compare, chaos, fp-oracle, husimi.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include "retrodiff/app/compare.hpp"
#include "retrodiff/app/config.hpp"
#include "retrodiff/app/run.hpp"
#include "retrodiff/core/error.hpp"

namespace {

using retrodiff::app::ExitCode;
using nlohmann::json;

/// Flags that override keys of the merged JSON config, applied only when given.
class Overrides {
 public:
  template <class T>
  void bind(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    apply_.push_back([opt, value, key](json& j) {
      if (opt->count() > 0) j[key] = *value;
    });
  }

  void bind_common(CLI::App* app) {
    app->add_option("--config", config_path_, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    bind<std::string>(app, "--scenario", "scenario", "amplifier | free_particle");
    bind<double>(app, "--t0", "t0", "start time");
    bind<double>(app, "--tf", "tf", "final time");
    bind<double>(app, "--dt", "dt", "time step");
    bind<double>(app, "--p0", "p0", "coherent-state momentum");
    bind<double>(app, "--q0", "q0", "coherent-state position");
    bind<double>(app, "--mass", "mass", "particle mass (free_particle)");
    bind<std::uint64_t>(app, "--seed", "seed", "master seed");
    bind<std::string>(app, "--drift-convention", "drift_sign_convention", "anderson | paper_literal");
    bind<std::string>(app, "--out-dir", "out_dir", "output directory");
    bind<unsigned>(app, "--threads", "threads", "worker cap (0 = all cores)");
  }

  [[nodiscard]] retrodiff::app::ScenarioConfig resolve(const std::string& forced_mode = {}) const {
    json j = config_path_.empty() ? json::object() : retrodiff::app::load_config_file(config_path_);
    for (const auto& f : apply_) f(j);
    if (!forced_mode.empty()) j["mode"] = forced_mode;
    return retrodiff::app::ScenarioConfig::from_json(j);
  }

 private:
  std::string config_path_;
  std::vector<std::function<void(json&)>> apply_;
};

void print_result(const retrodiff::app::RunResult& r) {
  for (const auto& f : r.outputs) std::cout << "wrote " << f.string() << '\n';
  std::cout << "manifest " << r.manifest.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guided retro-diffusion simulations on Husimi phase-space densities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", retrodiff::app::kVersion);

  Overrides sim_o;
  CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario and write its outputs");
  sim_o.bind_common(simulate);
  sim_o.bind<std::string>(simulate, "--mode", "mode", "retro | forward_guided | deterministic | meanfield | fp_oracle");
  sim_o.bind<std::size_t>(simulate, "--n-traj", "n_traj", "trajectories");
  sim_o.bind<std::size_t>(simulate, "--n-particles", "n_particles", "particles (meanfield)");
  sim_o.bind<std::string>(simulate, "--bandwidth-rule", "bandwidth_rule", "inverse_n | power:<a> | fixed:<h>");
  sim_o.bind<std::string>(simulate, "--interaction", "interaction", "mollified_score | harmonic_potential");
  sim_o.bind<std::size_t>(simulate, "--record-stride", "record_stride", "keep every k-th time node");
  sim_o.bind<std::size_t>(simulate, "--grid-points", "grid_points", "fp_oracle points per axis");
  sim_o.bind<double>(simulate, "--fp-dt", "fp_dt", "fp_oracle step (0 = largest stable)");

  Overrides chaos_o;
  CLI::App* chaos = app.add_subcommand("chaos", "W1 to the mean-field law across particle counts");
  chaos_o.bind_common(chaos);
  chaos_o.bind<std::vector<std::size_t>>(chaos, "--n-list", "n_list", "increasing particle counts");
  chaos_o.bind<std::size_t>(chaos, "--n-reps", "n_reps", "replicates per N");
  chaos_o.bind<std::string>(chaos, "--bandwidth-rule", "bandwidth_rule", "inverse_n | power:<a> | fixed:<h>");
  chaos_o.bind<std::string>(chaos, "--interaction", "interaction", "mollified_score | harmonic_potential");

  Overrides fp_o;
  CLI::App* fp = app.add_subcommand("fp-oracle", "Evolve the Husimi density by finite differences against the exact flow");
  fp_o.bind_common(fp);
  fp_o.bind<std::size_t>(fp, "--grid-points", "grid_points", "points per axis");
  fp_o.bind<double>(fp, "--fp-dt", "fp_dt", "step (0 = largest stable)");

  retrodiff::app::CompareRequest cmp;
  std::string cmp_out;
  CLI::App* compare = app.add_subcommand("compare", "Per-time W1 and KS between two trajectory CSVs");
  compare->add_option("ensemble_a", cmp.a, "first trajectories CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("ensemble_b", cmp.b, "second trajectories CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--times", cmp.times, "times to compare (default: all nodes)");
  compare->add_option("--threshold", cmp.threshold, "q-W1 threshold of the verdict")->capture_default_str();
  compare->add_option("--out", cmp_out, "metrics JSON path (default: stdout only)");

  retrodiff::app::HusimiRequest hus;
  std::string hus_out;
  CLI::App* husimi = app.add_subcommand("husimi", "Husimi density of a coherent state as CSV");
  husimi->add_option("--p0", hus.p0, "momentum")->capture_default_str();
  husimi->add_option("--q0", hus.q0, "position")->capture_default_str();
  husimi->add_option("--hbar", hus.hbar, "Planck constant")->capture_default_str();
  husimi->add_option("--points", hus.points, "grid points per axis")->capture_default_str();
  husimi->add_option("--out", hus_out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ExitCode::kOk : ExitCode::kConfig;
  }

  try {
    if (simulate->parsed()) {
      print_result(retrodiff::app::run_scenario(sim_o.resolve()));
    } else if (chaos->parsed()) {
      print_result(retrodiff::app::run_chaos(chaos_o.resolve()));
    } else if (fp->parsed()) {
      print_result(retrodiff::app::run_scenario(fp_o.resolve("fp_oracle")));
    } else if (compare->parsed()) {
      const auto result = retrodiff::app::compare_files(cmp);
      if (!cmp_out.empty()) {
        std::ofstream out(cmp_out);
        if (!out) throw retrodiff::Error("app: cannot write '" + cmp_out + "'");
        out << result.dump(2) << '\n';
      }
      std::cout << result.dump(2) << '\n';
    } else if (husimi->parsed()) {
      hus.out = hus_out;
      retrodiff::app::run_husimi(hus);
      std::cout << "wrote " << hus_out << '\n';
    }
  } catch (const retrodiff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ExitCode::kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode::kRuntime;
  }
  return ExitCode::kOk;
}
