#pragma once

#include <functional>
#include <span>
#include <string>

namespace retrodiff::meanfield {

class ParticleSystem;

/// Pairwise interaction V(q, x) with its q-gradient.
struct PairwisePotential {
  std::string name;
  std::function<double(double q, double x)> value;
  std::function<double(double q, double x)> gradient;
  /// ∂_q (V(q,·) * K_h)(x) in closed form; Gauss-Legendre quadrature of
  /// `gradient` against the kernel is used when empty.
  std::function<double(double q, double x, double h)> smoothed_gradient;
};

/// V(q, x) = ½ (q - x)². Gaussian smoothing leaves ∂_q V = q - x unchanged.
[[nodiscard]] PairwisePotential harmonic_potential();

/// Largest |gradient - central difference of value| (step 1e-5) over the
/// given points paired with themselves.
[[nodiscard]] double gradient_mismatch(const PairwisePotential& potential, std::span<const double> qs,
                                       std::span<const double> xs);

/// ∂_q Ṽ(q, x) with Ṽ(q, ·) = V(q, ·) * K_h.
[[nodiscard]] double smoothed_gradient(const PairwisePotential& potential, double q, double x, double h);

/// -b² (1/N) Σ_i ∂_q Ṽ(q, q_i): the force from the average mollified pair
/// energy of the N-system.
[[nodiscard]] double potential_drift(const ParticleSystem& system, const PairwisePotential& potential, double b,
                                     double q);

}  // namespace retrodiff::meanfield
