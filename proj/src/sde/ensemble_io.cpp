#include "retrodiff/sde/ensemble_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "retrodiff/core/error.hpp"
#include "retrodiff/core/serialize.hpp"

namespace retrodiff::sde {
namespace {

double parse_field(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("ensemble csv: line " + std::to_string(line) + ": bad number '" + text + "'");
  }
}

}  // namespace

void write_ensemble_csv(std::ostream& out, const Ensemble& ensemble) {
  out << "traj_id,t,p,q\n";
  const auto& grid = ensemble.grid();
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const auto& states = ensemble.trajectories()[i].states();
    for (std::size_t k = 0; k < states.size(); ++k)
      out << i << ',' << format_double(grid.time(k)) << ',' << format_double(states[k].p) << ','
          << format_double(states[k].q) << '\n';
  }
}

std::vector<double> EnsembleTable::q_at(std::size_t node) const {
  std::vector<double> out(n_traj);
  for (std::size_t i = 0; i < n_traj; ++i) out[i] = states[i * times.size() + node].q;
  return out;
}

std::vector<double> EnsembleTable::p_at(std::size_t node) const {
  std::vector<double> out(n_traj);
  for (std::size_t i = 0; i < n_traj; ++i) out[i] = states[i * times.size() + node].p;
  return out;
}

std::size_t EnsembleTable::node_at(double t) const {
  for (std::size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return k;
  throw ConfigError("ensemble csv: no grid node at t=" + format_double(t));
}

EnsembleTable read_ensemble_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "traj_id,t,p,q")
    throw ConfigError("ensemble csv: expected header 'traj_id,t,p,q'");
  EnsembleTable table;
  std::size_t line_no = 1;
  long current = -1;
  std::size_t node = 0;
  std::string field[4];
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    for (auto& f : field)
      if (!std::getline(row, f, ',')) throw ConfigError("ensemble csv: line " + std::to_string(line_no) + " has too few columns");
    const auto id = static_cast<long>(parse_field(field[0], line_no));
    const double t = parse_field(field[1], line_no);
    if (id != current) {
      if (id != current + 1) throw ConfigError("ensemble csv: trajectory ids must be consecutive from 0");
      if (current >= 0 && node != table.times.size())
        throw ConfigError("ensemble csv: trajectory " + std::to_string(current) + " is short");
      current = id;
      node = 0;
      ++table.n_traj;
    }
    if (current == 0) {
      table.times.push_back(t);
    } else if (node >= table.times.size() || table.times[node] != t) {
      throw ConfigError("ensemble csv: trajectory " + std::to_string(id) + " has a different time grid");
    }
    table.states.push_back({parse_field(field[2], line_no), parse_field(field[3], line_no)});
    ++node;
  }
  if (table.n_traj == 0) throw ConfigError("ensemble csv: no rows");
  if (node != table.times.size()) throw ConfigError("ensemble csv: last trajectory is short");
  return table;
}

}  // namespace retrodiff::sde
