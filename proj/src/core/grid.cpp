#include "retrodiff/core/grid.hpp"

#include <cmath>
#include <string>

#include "retrodiff/core/error.hpp"

namespace retrodiff {

bool PhaseState::finite() const noexcept { return std::isfinite(p) && std::isfinite(q); }

UniformGrid::UniformGrid(double start, double stop, std::size_t size)
    : start_(start), step_(0.0), size_(size) {
  if (size < 2) throw DomainError("core: uniform grid needs at least 2 points");
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start))
    throw DomainError("core: uniform grid needs finite start < stop");
  step_ = (stop - start) / static_cast<double>(size - 1);
}

std::vector<double> UniformGrid::values() const {
  std::vector<double> out(size_);
  for (std::size_t k = 0; k < size_; ++k) out[k] = (*this)[k];
  return out;
}

double trapezoid(std::span<const double> values, double step) noexcept {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) sum += values[k];
  return sum * step;
}

TimeGrid::TimeGrid(double t0, double tf, double dt) : t0_(t0), tf_(tf), dt_(dt), n_steps_(0) {
  if (!std::isfinite(t0) || !std::isfinite(tf) || !(tf > t0))
    throw DomainError("core: time grid needs finite t0 < tf");
  if (!std::isfinite(dt) || !(dt > 0.0)) throw DomainError("core: time grid needs dt > 0");
  if (dt > tf - t0) throw DomainError("core: time grid needs dt <= tf - t0");
  const double ratio = (tf - t0) / dt;
  const double n = std::round(ratio);
  if (std::abs(t0 + n * dt - tf) > 1e-9 * std::max(1.0, std::abs(tf - t0)))
    throw DomainError("core: (tf - t0)/dt = " + std::to_string(ratio) + " is not an integer step count");
  n_steps_ = static_cast<std::size_t>(n);
}

double TimeGrid::time(std::size_t k) const noexcept {
  if (k == n_steps_) return tf_;
  return t0_ + static_cast<double>(k) * dt_;
}

TimeGrid TimeGrid::coarsened(std::size_t stride) const {
  if (stride == 0 || n_steps_ % stride != 0)
    throw DomainError("core: record stride " + std::to_string(stride) + " does not divide " +
                      std::to_string(n_steps_) + " steps");
  return TimeGrid(t0_, tf_, dt_ * static_cast<double>(stride));
}

}  // namespace retrodiff
