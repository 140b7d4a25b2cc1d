#include "retrodiff/app/compare.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "retrodiff/core/error.hpp"
#include "retrodiff/core/serialize.hpp"
#include "retrodiff/metrics/distances.hpp"

namespace retrodiff::app {
namespace {

std::string describe(const sde::EnsembleTable& t) {
  std::ostringstream s;
  s << "n_nodes=" << t.times.size();
  if (!t.times.empty()) s << ", t0=" << format_double(t.times.front()) << ", tf=" << format_double(t.times.back());
  if (t.times.size() > 1) s << ", dt=" << format_double(t.times[1] - t.times[0]);
  return s.str();
}

bool same_grid(const sde::EnsembleTable& a, const sde::EnsembleTable& b) {
  if (a.times.size() != b.times.size()) return false;
  for (std::size_t k = 0; k < a.times.size(); ++k)
    if (std::abs(a.times[k] - b.times[k]) > 1e-9) return false;
  return true;
}

sde::EnsembleTable load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("compare: cannot read '" + path.string() + "'");
  return sde::read_ensemble_csv(in);
}

}  // namespace

nlohmann::ordered_json compare_tables(const sde::EnsembleTable& a, const sde::EnsembleTable& b,
                                      const std::vector<double>& times, double threshold) {
  if (!same_grid(a, b))
    throw ConfigError("compare: time grid mismatch: a has {" + describe(a) + "}, b has {" + describe(b) + "}");
  if (!(threshold > 0.0)) throw ConfigError("threshold: must be > 0");
  std::vector<std::size_t> nodes;
  if (times.empty()) {
    for (std::size_t k = 0; k < a.times.size(); ++k) nodes.push_back(k);
  } else {
    for (double t : times) nodes.push_back(a.node_at(t));
  }

  nlohmann::ordered_json out;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  double worst = 0.0;
  for (std::size_t k : nodes) {
    const metrics::SampleSet qa(a.q_at(k)), qb(b.q_at(k)), pa(a.p_at(k)), pb(b.p_at(k));
    const double w1q = metrics::wasserstein1(qa, qb);
    worst = std::max(worst, w1q);
    rows.push_back({{"t", a.times[k]},
                    {"w1_q", w1q},
                    {"ks_q", metrics::ks_two_sample(qa, qb)},
                    {"w1_p", metrics::wasserstein1(pa, pb)},
                    {"ks_p", metrics::ks_two_sample(pa, pb)}});
  }
  out["n_traj_a"] = a.n_traj;
  out["n_traj_b"] = b.n_traj;
  out["rows"] = rows;
  out["max_w1_q"] = worst;
  out["threshold"] = threshold;
  out["equivalent_within"] = worst <= threshold;
  return out;
}

nlohmann::ordered_json compare_files(const CompareRequest& r) {
  return compare_tables(load(r.a), load(r.b), r.times, r.threshold);
}

}  // namespace retrodiff::app
