#pragma once

#include <iosfwd>
#include <string>

#include "retrodiff/core/husimi.hpp"
#include "retrodiff/core/marginal.hpp"

namespace retrodiff {

/// Shortest decimal form is not used anywhere; every number goes out with
/// 17 significant digits so identical doubles give identical bytes.
[[nodiscard]] std::string format_double(double x);

/// CSV with header `p,q,value`, one row per grid node (p-major).
void write_csv(std::ostream& out, const HusimiGrid& density);
/// CSV with header `q,value`.
void write_csv(std::ostream& out, const DensityGrid1D& density);

/// {"p_mean0": .., "q_mean0": .., "variance": ..}
[[nodiscard]] std::string to_json(const GaussianPhaseSolution& solution);
/// Parses the JSON above into an amplifier solution. DomainError on bad input.
[[nodiscard]] GaussianPhaseSolution amplifier_solution_from_json(const std::string& text);

}  // namespace retrodiff
