#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace retrodiff::metrics {

/// Labelled, nonempty set of finite samples.
class SampleSet {
 public:
  /// DomainError if empty or any value is not finite.
  explicit SampleSet(std::vector<double> values, std::string label = {});

  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  /// Ascending copy, computed once.
  [[nodiscard]] const std::vector<double>& sorted() const;

 private:
  std::vector<double> values_;
  std::string label_;
  mutable std::vector<double> sorted_;
};

/// Exact 1-D Wasserstein-1 distance between two empirical measures.
/// Equal sizes: mean |a_(i) - b_(i)|; otherwise ∫|F_a - F_b| dx.
[[nodiscard]] double wasserstein1(const SampleSet& a, const SampleSet& b);

/// Exact W1 between an empirical measure and N(mean, variance).
[[nodiscard]] double wasserstein1_to_normal(const SampleSet& a, double mean, double variance);

/// Kolmogorov-Smirnov sup distance between the empirical CDF and `cdf`.
[[nodiscard]] double ks_statistic(const SampleSet& a, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
[[nodiscard]] double ks_two_sample(const SampleSet& a, const SampleSet& b);

}  // namespace retrodiff::metrics
