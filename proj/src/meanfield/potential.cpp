#include "retrodiff/meanfield/potential.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "retrodiff/meanfield/particle_system.hpp"

namespace retrodiff::meanfield {

PairwisePotential harmonic_potential() {
  return {
      .name = "harmonic",
      .value = [](double q, double x) { return 0.5 * (q - x) * (q - x); },
      .gradient = [](double q, double x) { return q - x; },
      .smoothed_gradient = [](double q, double x, double) { return q - x; },
  };
}

double gradient_mismatch(const PairwisePotential& potential, std::span<const double> qs, std::span<const double> xs) {
  constexpr double step = 1e-5;
  double worst = 0.0;
  for (double q : qs) {
    for (double x : xs) {
      const double fd = (potential.value(q + step, x) - potential.value(q - step, x)) / (2.0 * step);
      worst = std::max(worst, std::abs(fd - potential.gradient(q, x)));
    }
  }
  return worst;
}

double smoothed_gradient(const PairwisePotential& potential, double q, double x, double h) {
  if (potential.smoothed_gradient) return potential.smoothed_gradient(q, x, h);
  // ∫ ∂_q V(q, y) K_h(x - y) dy over y = x + u, |u| ≤ 8h.
  const MollifierKernel kernel(h);
  auto integrand = [&](double u) { return potential.gradient(q, x + u) * kernel(u); };
  return boost::math::quadrature::gauss<double, 30>::integrate(integrand, -8.0 * h, 8.0 * h);
}

double potential_drift(const ParticleSystem& system, const PairwisePotential& potential, double b, double q) {
  const double h = system.kernel().bandwidth();
  double sum = 0.0;
  for (double x : system.positions()) sum += smoothed_gradient(potential, q, x, h);
  return -b * b * sum / static_cast<double>(system.size());
}

}  // namespace retrodiff::meanfield
