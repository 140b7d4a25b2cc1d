#include "retrodiff/core/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "retrodiff/core/error.hpp"

namespace retrodiff {
namespace {

constexpr std::array<double, 5> kProbe = {-2.5, -0.7, 0.0, 0.9, 3.1};
constexpr std::array<double, 3> kProbeTimes = {0.0, 0.4, 1.3};

bool close(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

DiffusionModel::DiffusionModel(Spec spec) : spec_(std::move(spec)) {
  if (!spec_.a1 || !spec_.a2 || !spec_.b)
    throw DomainError("core: model '" + spec_.name + "' is missing a coefficient");

  for (double t : kProbeTimes) {
    for (double p : kProbe) {
      for (double q : kProbe) {
        const double a1 = spec_.a1(p, q, t), a2 = spec_.a2(p, q, t), b = spec_.b(p, q, t);
        if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(b))
          throw DomainError("core: model '" + spec_.name + "' has non-finite coefficients");
        if (b < 0.0) throw DomainError("core: model '" + spec_.name + "' has negative b");
        if (!close(b, spec_.b(kProbe[0], q, t))) b_independent_of_p_ = false;
        if (spec_.product_form) {
          const bool coupled = !close(a1, spec_.a1(p, kProbe[0], t)) ||
                               !close(a2, spec_.a2(kProbe[0], q, t)) || !b_independent_of_p_;
          if (coupled)
            throw DomainError("core: model '" + spec_.name +
                              "' claims product form but couples p and q");
        }
      }
    }
  }
}

double DiffusionModel::db2_dq(double p, double q, double t) const {
  if (spec_.db2_dq) return spec_.db2_dq(p, q, t);
  const double h = 1e-5 * std::max(1.0, std::abs(q));
  return (b2(p, q + h, t) - b2(p, q - h, t)) / (2.0 * h);
}

DiffusionModel DiffusionModel::with_constant_diffusion(double b) const {
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("core: diffusion must be finite and >= 0");
  Spec s = spec_;
  s.name = spec_.name + "[b=" + std::to_string(b) + "]";
  s.b = [b](double, double, double) { return b; };
  s.db2_dq = [](double, double, double) { return 0.0; };
  return DiffusionModel(std::move(s));
}

DiffusionModel amplifier_model() {
  return DiffusionModel({
      .name = "amplifier",
      .a1 = [](double p, double, double) { return -p; },
      .a2 = [](double, double q, double) { return q; },
      .b = [](double, double, double) { return std::sqrt(2.0); },
      .product_form = true,
      .db2_dq = [](double, double, double) { return 0.0; },
  });
}

DiffusionModel free_particle_model(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw DomainError("core: free particle mass must be > 0, got " + std::to_string(mass));
  return DiffusionModel({
      .name = "free_particle",
      .a1 = [](double, double, double) { return 0.0; },
      .a2 = [mass](double p, double, double) { return p / mass; },
      .b = [](double, double, double) { return 0.0; },
      .product_form = false,
      .db2_dq = [](double, double, double) { return 0.0; },
  });
}

}  // namespace retrodiff
