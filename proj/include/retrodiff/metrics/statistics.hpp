#pragma once

#include <span>
#include <vector>

namespace retrodiff::metrics {

[[nodiscard]] double mean(std::span<const double> xs);
/// Unbiased (n - 1) sample variance.
[[nodiscard]] double variance(std::span<const double> xs);
[[nodiscard]] double standard_error(std::span<const double> xs);
/// Pearson correlation; DomainError for mismatched sizes or zero variance.
[[nodiscard]] double correlation(std::span<const double> xs, std::span<const double> ys);

/// Biased sample autocovariance (divide by n) of the mean-removed series at
/// integer lags 0..floor(max_lag/dt). DomainError unless the series is
/// longer than max_lag/dt.
[[nodiscard]] std::vector<double> autocovariance(std::span<const double> values, double dt, double max_lag);

/// Strictly increasing positive x with positive y, at least two points.
class ConvergenceSeries {
 public:
  ConvergenceSeries(std::vector<double> x, std::vector<double> y);
  [[nodiscard]] const std::vector<double>& x() const noexcept { return x_; }
  [[nodiscard]] const std::vector<double>& y() const noexcept { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Least-squares slope of log y against log x.
[[nodiscard]] double loglog_slope(const ConvergenceSeries& series);

}  // namespace retrodiff::metrics
