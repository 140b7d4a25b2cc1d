#include "retrodiff/core/serialize.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "retrodiff/core/error.hpp"

namespace retrodiff {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const HusimiGrid& density) {
  out << "p,q,value\n";
  for (std::size_t i = 0; i < density.p_grid().size(); ++i)
    for (std::size_t j = 0; j < density.q_grid().size(); ++j)
      out << format_double(density.p_grid()[i]) << ',' << format_double(density.q_grid()[j]) << ','
          << format_double(density(i, j)) << '\n';
}

void write_csv(std::ostream& out, const DensityGrid1D& density) {
  out << "q,value\n";
  for (std::size_t j = 0; j < density.q_grid().size(); ++j)
    out << format_double(density.q_grid()[j]) << ',' << format_double(density.values()[j]) << '\n';
}

std::string to_json(const GaussianPhaseSolution& solution) {
  nlohmann::ordered_json j;
  j["p_mean0"] = solution.p_mean0;
  j["q_mean0"] = solution.q_mean0;
  j["variance"] = solution.variance;
  return j.dump();
}

GaussianPhaseSolution amplifier_solution_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("variance").get<double>() != 1.0)
      throw DomainError("core: amplifier solutions have unit variance");
    return amplifier_solution(j.at("p_mean0").get<double>(), j.at("q_mean0").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("core: bad Gaussian solution JSON: ") + e.what());
  }
}

}  // namespace retrodiff
