#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "retrodiff/core/grid.hpp"

namespace retrodiff {

/// Normalized wavefunction sampled on a uniform x grid.
class Wavefunction {
 public:
  /// Validates ∫|ψ|²dx = 1 within 1e-6 (trapezoid).
  Wavefunction(UniformGrid x_grid, std::vector<std::complex<double>> amplitudes, double hbar);

  /// Rescales `amplitudes` to unit trapezoidal norm first.
  static Wavefunction normalized(UniformGrid x_grid, std::vector<std::complex<double>> amplitudes,
                                 double hbar);

  [[nodiscard]] const UniformGrid& x_grid() const noexcept { return x_grid_; }
  [[nodiscard]] const std::vector<std::complex<double>>& amplitudes() const noexcept {
    return amplitudes_;
  }
  [[nodiscard]] double hbar() const noexcept { return hbar_; }
  [[nodiscard]] double norm() const;

  /// ⟨x⟩ and Var(x) of |ψ|².
  [[nodiscard]] double position_mean() const;
  [[nodiscard]] double position_variance() const;

 private:
  UniformGrid x_grid_;
  std::vector<std::complex<double>> amplitudes_;
  double hbar_;
};

/// Coherent state centred at (p0, q0):
///   φ(x) = (πħ)^{-1/4} exp(-i p0 q0 / 2ħ) exp(i p0 x / ħ) exp(-(x - q0)² / 2ħ),
/// renormalized on the grid. The grid must span q0 ± 8√ħ with spacing ≤ √ħ/8.
[[nodiscard]] Wavefunction coherent_state(double p0, double q0, double hbar, const UniformGrid& x_grid);

/// Gaussian packet with position standard deviation `sigma_x` and mean
/// momentum p0. sigma_x = √(ħ/2) reproduces the coherent state modulus.
[[nodiscard]] Wavefunction gaussian_packet(double p0, double q0, double sigma_x, double hbar,
                                           const UniformGrid& x_grid);

/// Phase-space density on a (p, q) grid, stored row-major in p.
class HusimiGrid {
 public:
  /// Values must be finite and nonnegative up to a relative slack of 1e-9
  /// of the peak (explicit finite-difference steps leave round-off sized
  /// negative tails).
  HusimiGrid(UniformGrid p_grid, UniformGrid q_grid, std::vector<double> values, double hbar);

  [[nodiscard]] const UniformGrid& p_grid() const noexcept { return p_grid_; }
  [[nodiscard]] const UniformGrid& q_grid() const noexcept { return q_grid_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] double hbar() const noexcept { return hbar_; }

  [[nodiscard]] double operator()(std::size_t ip, std::size_t iq) const noexcept {
    return values_[ip * q_grid_.size() + iq];
  }

  /// Trapezoidal ∫∫ Q dp dq.
  [[nodiscard]] double total_mass() const;

 private:
  UniformGrid p_grid_;
  UniformGrid q_grid_;
  std::vector<double> values_;
  double hbar_;
};

/// Q(p,q) = |⟨φ_{p,q}|ψ⟩|² / (2πħ) with the overlap computed by trapezoidal
/// summation on ψ's x grid. CoverageError when |∫∫Q - 1| exceeds
/// `normalization_tolerance`.
[[nodiscard]] HusimiGrid husimi(const Wavefunction& psi, const UniformGrid& p_grid,
                                const UniformGrid& q_grid, double normalization_tolerance = 1e-4);

/// Trapezoidal ∫∫ f Q dp dq.
[[nodiscard]] double berezin_expectation(const std::function<double(double p, double q)>& f,
                                         const HusimiGrid& density);

}  // namespace retrodiff
