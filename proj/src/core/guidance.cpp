#include "retrodiff/core/guidance.hpp"

#include <string>

#include "retrodiff/core/error.hpp"

namespace retrodiff {

std::string to_string(DriftConvention c) {
  return c == DriftConvention::anderson ? "anderson" : "paper_literal";
}

DriftConvention parse_drift_convention(std::string_view name) {
  if (name == "anderson") return DriftConvention::anderson;
  if (name == "paper_literal") return DriftConvention::paper_literal;
  throw ConfigError("drift_convention: unknown value '" + std::string(name) +
                    "' (expected anderson or paper_literal)");
}

void require_p_independent_diffusion(const DiffusionModel& model, std::string_view module) {
  if (!model.b_independent_of_p())
    throw UnsupportedModelError(std::string(module) + ": model '" + model.name() +
                                "' has a p-dependent diffusion coefficient; guided dynamics need b(q, t)");
}

double guidance_drift(const DiffusionModel& model, const MarginalFlow& mu, double p, double q, double t,
                      DriftConvention convention) {
  require_p_independent_diffusion(model, "core");
  const double b2 = model.b2(p, q, t);
  const double transport = drift_sign(convention) * model.a2(p, q, t);
  if (b2 == 0.0 && model.db2_dq(p, q, t) == 0.0) return transport;
  // ∂_q(b² μ)/μ = ∂_q b² + b² ∂_q log μ
  return transport + model.db2_dq(p, q, t) + b2 * score(mu, q, t);
}

}  // namespace retrodiff
