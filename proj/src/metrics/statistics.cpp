#include "retrodiff/metrics/statistics.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "retrodiff/core/error.hpp"

namespace retrodiff::metrics {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("metrics: mean of an empty series");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw DomainError("metrics: variance needs at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double standard_error(std::span<const double> xs) {
  return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DomainError("metrics: correlation needs two equal-length series of length >= 2");
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DomainError("metrics: correlation of a constant series");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> autocovariance(std::span<const double> values, double dt, double max_lag) {
  if (!(dt > 0.0) || !(max_lag >= 0.0)) throw DomainError("metrics: autocovariance needs dt > 0, max_lag >= 0");
  const auto lags = static_cast<std::size_t>(std::floor(max_lag / dt + 1e-9));
  if (values.size() <= lags)
    throw DomainError("metrics: series of length " + std::to_string(values.size()) +
                      " is too short for " + std::to_string(lags) + " lags");
  const double m = mean(values);
  std::vector<double> centred(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) centred[i] = values[i] - m;
  const double n = static_cast<double>(values.size());
  std::vector<double> out(lags + 1);
  for (std::size_t lag = 0; lag <= lags; ++lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < centred.size(); ++i) s += centred[i] * centred[i + lag];
    out[lag] = s / n;
  }
  return out;
}

ConvergenceSeries::ConvergenceSeries(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2)
    throw DomainError("metrics: convergence series needs equal lengths >= 2");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] > 0.0)) throw DomainError("metrics: convergence series x must be positive");
    if (!(y_[i] > 0.0)) throw DomainError("metrics: convergence series y must be positive");
    if (i > 0 && !(x_[i] > x_[i - 1])) throw DomainError("metrics: convergence series x must increase");
  }
}

double loglog_slope(const ConvergenceSeries& series) {
  const std::size_t n = series.x().size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(series.x()[i]);
    ly[i] = std::log(series.y()[i]);
  }
  const double mx = mean(lx), my = mean(ly);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace retrodiff::metrics
