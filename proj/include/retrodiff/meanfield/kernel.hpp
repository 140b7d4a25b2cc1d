#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace retrodiff::meanfield {

/// Gaussian mollifier K(x) = N(x; 0, h²).
class MollifierKernel {
 public:
  explicit MollifierKernel(double bandwidth);

  [[nodiscard]] double bandwidth() const noexcept { return h_; }
  [[nodiscard]] double operator()(double x) const noexcept;
  [[nodiscard]] double derivative(double x) const noexcept;
  [[nodiscard]] double cdf(double x) const noexcept;

 private:
  double h_;
};

/// How the bandwidth scales with the particle count:
///   "inverse_n"   h = 1/N (default)
///   "power:a"     h = N^{-a}
///   "fixed:h"     h constant
class BandwidthRule {
 public:
  BandwidthRule() = default;
  /// ConfigError on anything else.
  static BandwidthRule parse(std::string_view text);

  [[nodiscard]] double bandwidth(std::size_t n_particles) const;
  [[nodiscard]] std::string to_string() const;

 private:
  enum class Kind { inverse_n, power, fixed };
  Kind kind_ = Kind::inverse_n;
  double parameter_ = 1.0;
};

}  // namespace retrodiff::meanfield
