#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace retrodiff {

/// Canonical phase-space point.
struct PhaseState {
  double p = 0.0;
  double q = 0.0;

  [[nodiscard]] bool finite() const noexcept;
};

/// Uniform 1-D sample grid x_k = start + k*step, k = 0..size-1.
class UniformGrid {
 public:
  UniformGrid(double start, double stop, std::size_t size);

  [[nodiscard]] double start() const noexcept { return start_; }
  [[nodiscard]] double stop() const noexcept { return start_ + step_ * static_cast<double>(size_ - 1); }
  [[nodiscard]] double step() const noexcept { return step_; }
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] double operator[](std::size_t k) const noexcept {
    return start_ + step_ * static_cast<double>(k);
  }
  [[nodiscard]] std::vector<double> values() const;

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;

 private:
  double start_;
  double step_;
  std::size_t size_;
};

/// Trapezoidal quadrature of equally spaced samples.
[[nodiscard]] double trapezoid(std::span<const double> values, double step) noexcept;

/// Fixed-step time discretization of [t0, tf].
class TimeGrid {
 public:
  /// n_steps is derived from (tf - t0)/dt and must reproduce tf to within
  /// one part in 1e9; otherwise DomainError.
  TimeGrid(double t0, double tf, double dt);

  [[nodiscard]] double t0() const noexcept { return t0_; }
  [[nodiscard]] double tf() const noexcept { return tf_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] std::size_t n_steps() const noexcept { return n_steps_; }
  [[nodiscard]] std::size_t n_nodes() const noexcept { return n_steps_ + 1; }
  [[nodiscard]] double time(std::size_t k) const noexcept;

  /// Every `stride`-th node of this grid; stride must divide n_steps.
  [[nodiscard]] TimeGrid coarsened(std::size_t stride) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t0_;
  double tf_;
  double dt_;
  std::size_t n_steps_;
};

}  // namespace retrodiff
