#pragma once

#include <string>
#include <string_view>

#include "retrodiff/core/marginal.hpp"
#include "retrodiff/core/model.hpp"

namespace retrodiff {

/// Sign given to a2 in the forward-time drift.
///   anderson:      ā2 = +a2 + ∂_q(b² μ)/μ   (time reversal of the backward q equation)
///   paper_literal: ā2 = -a2 + ∂_q(b² μ)/μ
enum class DriftConvention { anderson, paper_literal };

[[nodiscard]] std::string to_string(DriftConvention c);
/// ConfigError on unknown names.
[[nodiscard]] DriftConvention parse_drift_convention(std::string_view name);

[[nodiscard]] inline double drift_sign(DriftConvention c) noexcept {
  return c == DriftConvention::anderson ? 1.0 : -1.0;
}

/// Guided forward-time drift for q. Rejects models whose b depends on p
/// (UnsupportedModelError); SupportError propagates from the score.
[[nodiscard]] double guidance_drift(const DiffusionModel& model, const MarginalFlow& mu, double p, double q,
                                    double t, DriftConvention convention = DriftConvention::anderson);

/// Throws UnsupportedModelError unless b is independent of p.
void require_p_independent_diffusion(const DiffusionModel& model, std::string_view module);

}  // namespace retrodiff
