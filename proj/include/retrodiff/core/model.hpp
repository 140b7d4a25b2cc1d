#pragma once

#include <functional>
#include <string>

namespace retrodiff {

/// Coefficient function c(p, q, t).
using Coefficient = std::function<double(double p, double q, double t)>;

/// Drift and diffusion data of the phase-space Fokker-Planck equation
///
///   ∂_t Q = -∂_p(a1 Q) - ∂_q(a2 Q) + ½ ∂_p²(b² Q) - ½ ∂_q²(b² Q).
///
/// Construction spot-checks the structural flags by sampling, so a model
/// that claims `product_form` but couples p and q is rejected up front.
class DiffusionModel {
 public:
  struct Spec {
    std::string name;
    Coefficient a1;
    Coefficient a2;
    Coefficient b;
    /// a1 depends only on p; a2 and b only on q.
    bool product_form = false;
    /// ∂_q(b²); optional, central differences are used when empty.
    Coefficient db2_dq;
  };

  explicit DiffusionModel(Spec spec);

  [[nodiscard]] const std::string& name() const noexcept { return spec_.name; }
  [[nodiscard]] bool product_form() const noexcept { return spec_.product_form; }
  /// True when b showed no p-dependence in the construction-time sampling.
  [[nodiscard]] bool b_independent_of_p() const noexcept { return b_independent_of_p_; }

  [[nodiscard]] double a1(double p, double q, double t) const { return spec_.a1(p, q, t); }
  [[nodiscard]] double a2(double p, double q, double t) const { return spec_.a2(p, q, t); }
  [[nodiscard]] double b(double p, double q, double t) const { return spec_.b(p, q, t); }
  [[nodiscard]] double b2(double p, double q, double t) const {
    const double v = spec_.b(p, q, t);
    return v * v;
  }
  [[nodiscard]] double db2_dq(double p, double q, double t) const;

  /// Same drifts, diffusion replaced by the constant `b`.
  [[nodiscard]] DiffusionModel with_constant_diffusion(double b) const;

  [[nodiscard]] const Spec& spec() const noexcept { return spec_; }

 private:
  Spec spec_;
  bool b_independent_of_p_ = true;
};

/// a1 = -p, a2 = q, b = √2.
[[nodiscard]] DiffusionModel amplifier_model();

/// a1 = 0, a2 = p/m, b = 0. DomainError unless m > 0.
[[nodiscard]] DiffusionModel free_particle_model(double mass);

}  // namespace retrodiff
