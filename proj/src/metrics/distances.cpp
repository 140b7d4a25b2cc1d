#include "retrodiff/metrics/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <boost/math/distributions/normal.hpp>

#include "retrodiff/core/error.hpp"

namespace retrodiff::metrics {

SampleSet::SampleSet(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  if (values_.empty()) throw DomainError("metrics: sample set '" + label_ + "' is empty");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("metrics: sample set '" + label_ + "' holds a non-finite value");
}

const std::vector<double>& SampleSet::sorted() const {
  if (sorted_.empty()) {
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
  }
  return sorted_;
}

double wasserstein1(const SampleSet& a, const SampleSet& b) {
  const auto& xs = a.sorted();
  const auto& ys = b.sorted();
  if (xs.size() == ys.size()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) sum += std::abs(xs[i] - ys[i]);
    return sum / static_cast<double>(xs.size());
  }
  // Sweep the merged support; between consecutive breakpoints both CDFs are flat.
  const double na = static_cast<double>(xs.size()), nb = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double area = 0.0;
  double prev = std::min(xs.front(), ys.front());
  while (i < xs.size() || j < ys.size()) {
    const double next = (j == ys.size() || (i < xs.size() && xs[i] <= ys[j])) ? xs[i] : ys[j];
    area += std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb) * (next - prev);
    while (i < xs.size() && xs[i] == next) ++i;
    while (j < ys.size() && ys[j] == next) ++j;
    prev = next;
  }
  return area;
}

namespace {

// ∫_{-∞}^{z} Φ(s) ds for the standard normal.
double integrated_cdf(double z) {
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return z * cdf + pdf;
}

// ∫_{lo}^{hi} |level - Φ(z)| dz, lo < hi finite.
double gap_area(double level, double lo, double hi, double crossing) {
  auto signed_area = [&](double x0, double x1) {  // ∫ (level - Φ)
    return level * (x1 - x0) - (integrated_cdf(x1) - integrated_cdf(x0));
  };
  if (crossing <= lo || crossing >= hi) return std::abs(signed_area(lo, hi));
  return std::abs(signed_area(lo, crossing)) + std::abs(signed_area(crossing, hi));
}

}  // namespace

double wasserstein1_to_normal(const SampleSet& a, double mean, double variance) {
  if (!(variance > 0.0)) throw DomainError("metrics: normal reference needs variance > 0");
  const double sd = std::sqrt(variance);
  const boost::math::normal_distribution<double> unit;
  const auto& xs = a.sorted();
  const std::size_t n = xs.size();
  std::vector<double> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = (xs[k] - mean) / sd;

  // Left tail ∫_{-∞}^{z_1} Φ, right tail ∫_{z_n}^{∞} (1 - Φ) = ∫_{-∞}^{-z_n} Φ.
  double area = integrated_cdf(z.front()) + integrated_cdf(-z.back());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (z[k + 1] == z[k]) continue;
    const double level = static_cast<double>(k + 1) / static_cast<double>(n);
    area += gap_area(level, z[k], z[k + 1], boost::math::quantile(unit, level));
  }
  return area * sd;
}

double ks_statistic(const SampleSet& a, const std::function<double(double)>& cdf) {
  const auto& xs = a.sorted();
  const double n = static_cast<double>(xs.size());
  double sup = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double f = cdf(xs[k]);
    // Empirical CDF jumps from k/n to (k+1)/n at xs[k] (ties handled by the sweep).
    sup = std::max({sup, std::abs(f - static_cast<double>(k) / n), std::abs(static_cast<double>(k + 1) / n - f)});
  }
  return std::clamp(sup, 0.0, 1.0);
}

double ks_two_sample(const SampleSet& a, const SampleSet& b) {
  const auto& xs = a.sorted();
  const auto& ys = b.sorted();
  const double na = static_cast<double>(xs.size()), nb = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double next = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == next) ++i;
    while (j < ys.size() && ys[j] == next) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

}  // namespace retrodiff::metrics
