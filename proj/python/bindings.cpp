#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "retrodiff/app/config.hpp"
#include "retrodiff/app/run.hpp"
#include "retrodiff/core/error.hpp"
#include "retrodiff/core/guidance.hpp"
#include "retrodiff/core/husimi.hpp"
#include "retrodiff/core/marginal.hpp"
#include "retrodiff/metrics/distances.hpp"
#include "retrodiff/sde/integrators.hpp"

namespace py = pybind11;
using namespace retrodiff;

namespace {

app::ScenarioConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return app::ScenarioConfig::from_json(j);
}

std::string run_scenario_json(const std::string& config_text) {
  const auto result = app::run_scenario(parse_config(config_text));
  nlohmann::ordered_json out;
  out["metrics"] = result.metrics;
  out["manifest"] = result.manifest.string();
  out["outputs"] = nlohmann::ordered_json::array();
  for (const auto& p : result.outputs) out["outputs"].push_back(p.string());
  return out.dump();
}

std::string run_chaos_json(const std::string& config_text) {
  const auto result = app::run_chaos(parse_config(config_text));
  return result.metrics.dump();
}

py::array_t<double> husimi_coherent(double p0, double q0, double hbar, const std::vector<double>& p_range,
                                    const std::vector<double>& q_range, std::size_t points) {
  if (p_range.size() != 2 || q_range.size() != 2) throw DomainError("husimi: ranges must be [lo, hi]");
  const UniformGrid pg(p_range[0], p_range[1], points);
  const UniformGrid qg(q_range[0], q_range[1], points);
  const double width = 12.0 * std::sqrt(hbar);
  const double lo = std::min(q_range[0], q0) - width;
  const double hi = std::max(q_range[1], q0) + width;
  const auto nx = static_cast<std::size_t>(std::ceil((hi - lo) / (0.1 * std::sqrt(hbar)))) + 1;
  const UniformGrid xg(lo, hi, nx);
  const HusimiGrid h = husimi(coherent_state(p0, q0, hbar, xg), pg, qg);
  py::array_t<double> out({points, points});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < points; ++i)
    for (std::size_t k = 0; k < points; ++k) view(i, k) = h(i, k);
  return out;
}

app::Scenario scenario_for(const std::string& name, double p0, double q0, double mass) {
  app::ScenarioConfig c;
  c.scenario = name;
  c.p0 = p0;
  c.q0 = q0;
  c.mass = mass;
  return app::make_scenario(c);
}

double drift(const std::string& scenario, double p, double q, double t, double p0, double q0, double mass,
             const std::string& convention) {
  const auto s = scenario_for(scenario, p0, q0, mass);
  const MarginalFlow mu = s.q_law;
  return guidance_drift(s.model, mu, p, q, t, parse_drift_convention(convention));
}

py::dict simulate(const std::string& scenario, const std::string& mode, double t0, double tf, double dt,
                  std::size_t n_traj, std::uint64_t seed, double p0, double q0, double mass,
                  const std::string& convention, std::size_t record_stride, unsigned threads) {
  const auto s = scenario_for(scenario, p0, q0, mass);
  const sde::Mode m = sde::parse_mode(mode);
  std::optional<MarginalFlow> mu;
  if (m == sde::Mode::forward_guided) mu = MarginalFlow{s.q_law};
  const sde::EnsembleOptions opts{record_stride, parse_drift_convention(convention), threads};
  const TimeGrid grid(t0, tf, dt);
  sde::Ensemble ens = [&] {
    py::gil_scoped_release release;
    return sde::simulate_ensemble(m, s.model, grid, s.sampler, mu, n_traj, seed, opts);
  }();

  const TimeGrid& rec = ens.grid();
  const std::size_t n_nodes = rec.n_nodes();
  py::array_t<double> times(static_cast<py::ssize_t>(n_nodes));
  py::array_t<double> q({ens.size(), n_nodes});
  py::array_t<double> p({ens.size(), n_nodes});
  auto tv = times.mutable_unchecked<1>();
  auto qv = q.mutable_unchecked<2>();
  auto pv = p.mutable_unchecked<2>();
  for (std::size_t k = 0; k < n_nodes; ++k) tv(k) = rec.time(k);
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const auto& states = ens.trajectories()[i].states();
    for (std::size_t k = 0; k < n_nodes; ++k) {
      qv(i, k) = states[k].q;
      pv(i, k) = states[k].p;
    }
  }
  py::dict out;
  out["t"] = times;
  out["q"] = q;
  out["p"] = p;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Retrodictive diffusion sampling in phase space";
  m.attr("__version__") = app::kVersion;

  auto base = py::register_exception<Error>(m, "RetrodiffError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnsupportedModelError>(m, "UnsupportedModelError", base.ptr());
  py::register_exception<StepSizeError>(m, "StepSizeError", base.ptr());
  py::register_exception<CoverageError>(m, "CoverageError", base.ptr());
  py::register_exception<SupportError>(m, "SupportError", base.ptr());

  m.def("run_scenario_json", &run_scenario_json, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("run_chaos_json", &run_chaos_json, py::arg("config"), py::call_guard<py::gil_scoped_release>());

  m.def("husimi_coherent", &husimi_coherent, py::arg("p0"), py::arg("q0"), py::arg("hbar"), py::arg("p_range"),
        py::arg("q_range"), py::arg("points") = 121);

  m.def(
      "amplifier_density",
      [](double p, double q, double t, double p0, double q0) { return amplifier_solution(p0, q0).density(p, q, t); },
      py::arg("p"), py::arg("q"), py::arg("t"), py::arg("p0") = 1.0, py::arg("q0") = 1.0);

  m.def("guidance_drift", &drift, py::arg("scenario"), py::arg("p"), py::arg("q"), py::arg("t"),
        py::arg("p0") = 1.0, py::arg("q0") = 1.0, py::arg("mass") = 1.0, py::arg("convention") = "anderson");

  m.def("simulate", &simulate, py::arg("scenario") = "amplifier", py::arg("mode") = "forward_guided",
        py::arg("t0") = 0.0, py::arg("tf") = 1.0, py::arg("dt") = 1e-3, py::arg("n_traj") = 1000,
        py::arg("seed") = 1, py::arg("p0") = 1.0, py::arg("q0") = 1.0, py::arg("mass") = 1.0,
        py::arg("convention") = "anderson", py::arg("record_stride") = 1, py::arg("threads") = 0);

  m.def(
      "wasserstein1",
      [](std::vector<double> a, std::vector<double> b) {
        return metrics::wasserstein1(metrics::SampleSet(std::move(a)), metrics::SampleSet(std::move(b)));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "wasserstein1_to_normal",
      [](std::vector<double> a, double mean, double variance) {
        return metrics::wasserstein1_to_normal(metrics::SampleSet(std::move(a)), mean, variance);
      },
      py::arg("a"), py::arg("mean"), py::arg("variance"));
  m.def(
      "ks_two_sample",
      [](std::vector<double> a, std::vector<double> b) {
        return metrics::ks_two_sample(metrics::SampleSet(std::move(a)), metrics::SampleSet(std::move(b)));
      },
      py::arg("a"), py::arg("b"));
}
