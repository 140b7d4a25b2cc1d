#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "retrodiff/core/error.hpp"
#include "retrodiff/metrics/distances.hpp"
#include "retrodiff/metrics/statistics.hpp"

using namespace retrodiff;
using namespace retrodiff::metrics;

namespace {

// Box-Muller over the standard engine; independent of the library sampler.
std::vector<double> gaussian_draws(std::size_t n, double mean, double sd, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) {
    const double u1 = 1.0 - u(eng), u2 = u(eng);
    x = mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  return out;
}

// ∫|F_a - F_b| on the merged support, evaluated piecewise.
double w1_brute(std::vector<double> a, std::vector<double> b) {
  std::vector<double> xs = a;
  xs.insert(xs.end(), b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double x = xs[k];
    const double fa = static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) / a.size();
    const double fb = static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) / b.size();
    total += std::abs(fa - fb) * (xs[k + 1] - x);
  }
  return total;
}

double ks_brute(const std::vector<double>& a, const std::function<double(double)>& cdf) {
  double d = 0.0;
  for (double x : a) {
    std::size_t below = 0, at_or_below = 0;
    for (double y : a) {
      below += y < x;
      at_or_below += y <= x;
    }
    d = std::max({d, std::abs(cdf(x) - static_cast<double>(below) / a.size()),
                  std::abs(static_cast<double>(at_or_below) / a.size() - cdf(x))});
  }
  return d;
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Exact OU transition, theta = 1, sigma^2 = 2 (stationary variance 1).
std::vector<double> ou_path(double dt, double T, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(T / dt) + 1;
  const auto z = gaussian_draws(n, 0, 1, seed);
  std::vector<double> x(n);
  const double a = std::exp(-dt), s = std::sqrt(1.0 - a * a);
  x[0] = z[0];
  for (std::size_t k = 1; k < n; ++k) x[k] = a * x[k - 1] + s * z[k];
  return x;
}

}  // namespace

TEST_SUITE("wasserstein") {
  TEST_CASE("identical sets are at distance zero") {
    const auto a = gaussian_draws(500, 0, 1, 1);
    CHECK(wasserstein1(SampleSet(a), SampleSet(a)) == 0.0);
  }

  TEST_CASE("single atoms are at distance |a - b|") {
    CHECK(wasserstein1(SampleSet({1.5}), SampleSet({-2.0})) == 3.5);
  }

  TEST_CASE("shifted Gaussians are at distance equal to the shift") {
    const SampleSet a(gaussian_draws(100000, 0.0, 1.0, 11)), b(gaussian_draws(100000, 0.5, 1.0, 12));
    CHECK(std::abs(wasserstein1(a, b) - 0.5) < 0.02);
  }

  TEST_CASE("shifting an equal-size set moves it by exactly |c|") {
    const auto a = gaussian_draws(257, 0, 1, 3);
    for (double c : {0.25, -1.5, 4.0}) {
      auto b = a;
      for (auto& x : b) x += c;
      CHECK(wasserstein1(SampleSet(a), SampleSet(b)) == doctest::Approx(std::abs(c)).epsilon(1e-12));
    }
  }

  TEST_CASE("symmetry and triangle inequality on random triples") {
    std::mt19937_64 eng(99);
    for (int trial = 0; trial < 25; ++trial) {
      const auto n = [&] { return static_cast<std::size_t>(5 + eng() % 60); };
      const SampleSet a(gaussian_draws(n(), 0, 1, eng())), b(gaussian_draws(n(), 0.3, 2, eng())),
          c(gaussian_draws(n(), -1, 0.5, eng()));
      CHECK(std::abs(wasserstein1(a, b) - wasserstein1(b, a)) < 1e-12);
      CHECK(wasserstein1(a, c) <= wasserstein1(a, b) + wasserstein1(b, c) + 1e-12);
    }
  }

  TEST_CASE("unequal sizes agree with a direct CDF-area evaluation") {
    const auto a = gaussian_draws(37, 0, 1, 5), b = gaussian_draws(91, 0.2, 1.3, 6);
    CHECK(wasserstein1(SampleSet(a), SampleSet(b)) == doctest::Approx(w1_brute(a, b)).epsilon(1e-12));
  }

  TEST_CASE("exact distance to a normal law") {
    CHECK(wasserstein1_to_normal(SampleSet({0.0}), 0.0, 1.0) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)));
    const SampleSet big(gaussian_draws(200000, 1.0, 2.0, 8));
    CHECK(wasserstein1_to_normal(big, 1.0, 4.0) < 0.02);
    CHECK(std::abs(wasserstein1_to_normal(big, 1.3, 4.0) - 0.3) < 0.02);
  }

  TEST_CASE("sample sets reject empty and non-finite input") {
    CHECK_THROWS_AS(SampleSet({}), DomainError);
    CHECK_THROWS_AS(SampleSet({1.0, std::nan("")}), DomainError);
  }
}

TEST_SUITE("ks") {
  TEST_CASE("quantile-placed samples sit within one step of the CDF") {
    const std::size_t n = 99;
    std::vector<double> a;
    for (std::size_t i = 1; i <= n; ++i) {
      // invert the standard normal CDF by bisection
      double lo = -10, hi = 10, target = static_cast<double>(i) / (n + 1);
      for (int it = 0; it < 200; ++it) (std_normal_cdf(0.5 * (lo + hi)) < target ? lo : hi) = 0.5 * (lo + hi);
      a.push_back(0.5 * (lo + hi));
    }
    CHECK(ks_statistic(SampleSet(a), std_normal_cdf) <= 1.0 / (n + 1) + 1e-9);
  }

  TEST_CASE("a point mass is far from any continuous law") {
    const double c = 0.4;
    const double d = ks_statistic(SampleSet(std::vector<double>(50, c)), std_normal_cdf);
    CHECK(d >= std::max(std_normal_cdf(c), 1.0 - std_normal_cdf(c)));
    CHECK(d <= 1.0);
  }

  TEST_CASE("large matched sample is within the 5 percent band") {
    CHECK(ks_statistic(SampleSet(gaussian_draws(100000, 0, 1, 21)), std_normal_cdf) < 0.006);
  }

  TEST_CASE("statistic agrees with brute force and stays in [0, 1]") {
    for (std::uint64_t seed = 1; seed < 8; ++seed) {
      const auto a = gaussian_draws(40, 0.5 * static_cast<double>(seed) - 2, 1, seed);
      const double d = ks_statistic(SampleSet(a), std_normal_cdf);
      CHECK(d == doctest::Approx(ks_brute(a, std_normal_cdf)).epsilon(1e-12));
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
    }
    CHECK(ks_statistic(SampleSet({50.0}), std_normal_cdf) <= 1.0);
  }

  TEST_CASE("two-sample statistic") {
    const SampleSet a({1, 2, 3}), b({1, 2, 3});
    CHECK(ks_two_sample(a, b) == 0.0);
    CHECK(ks_two_sample(SampleSet({0, 1}), SampleSet({5, 6})) == 1.0);
  }
}

TEST_SUITE("statistics") {
  TEST_CASE("autocovariance of a constant series vanishes") {
    const std::vector<double> c(1000, 3.25);
    for (double v : autocovariance(c, 0.01, 1.0)) CHECK(v == 0.0);
  }

  TEST_CASE("lag zero is the biased sample variance") {
    const auto x = gaussian_draws(5000, 2, 1.5, 4);
    const auto ac = autocovariance(x, 0.1, 0.5);
    REQUIRE(ac.size() == 6);
    const double n = static_cast<double>(x.size());
    CHECK(ac[0] == doctest::Approx(variance(x) * (n - 1) / n).epsilon(1e-12));
  }

  // A single T = 200 path has sd(ratio at lag 1) ~ 0.055, so this passes for
  // only ~60% of seeds; the seed is fixed and the outcome reported as is.
  TEST_CASE("single long OU path decorrelates as exp(-lag)" * doctest::may_fail()) {
    const double dt = 1e-3;
    const auto ac = autocovariance(ou_path(dt, 200.0, 2026), dt, 1.0);
    for (int j = 1; j <= 10; ++j) {
      const double lag = 0.1 * j;
      CHECK(std::abs(ac[static_cast<std::size_t>(100 * j)] / ac[0] - std::exp(-lag)) < 0.05);
    }
  }

  TEST_CASE("OU autocorrelation averaged over 20 paths matches exp(-lag)") {
    const double dt = 1e-3;
    std::vector<double> mean_ratio(11, 0.0);
    for (std::uint64_t r = 0; r < 20; ++r) {
      const auto ac = autocovariance(ou_path(dt, 200.0, 500 + r), dt, 1.0);
      for (int j = 0; j <= 10; ++j) mean_ratio[j] += ac[static_cast<std::size_t>(100 * j)] / ac[0] / 20.0;
    }
    for (int j = 1; j <= 10; ++j) CHECK(std::abs(mean_ratio[j] - std::exp(-0.1 * j)) < 0.05);
  }

  TEST_CASE("series shorter than the lag window is rejected") {
    CHECK_THROWS_AS(static_cast<void>(autocovariance(std::vector<double>(5, 1.0), 0.1, 1.0)), DomainError);
  }

  TEST_CASE("correlation of a series with itself and its negation") {
    const auto x = gaussian_draws(300, 0, 1, 9);
    std::vector<double> y = x;
    for (auto& v : y) v = -2 * v + 1;
    CHECK(correlation(x, x) == doctest::Approx(1.0));
    CHECK(correlation(x, y) == doctest::Approx(-1.0));
  }

  TEST_CASE("log-log slope of exact and noisy power laws") {
    CHECK(loglog_slope(ConvergenceSeries({1, 2, 4, 8}, {1, 0.5, 0.25, 0.125})) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(loglog_slope(ConvergenceSeries({1, 10, 100}, {3, 3, 3})) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    const auto noise = gaussian_draws(5, 0, 0.01, 31);
    std::vector<double> x, y;
    for (int k = 0; k < 5; ++k) {
      x.push_back(std::pow(4.0, k) * 10.0);
      y.push_back(2.0 * std::pow(x.back(), -0.5) * (1.0 + noise[k]));
    }
    CHECK(std::abs(loglog_slope(ConvergenceSeries(x, y)) + 0.5) < 0.05);
  }

  TEST_CASE("convergence series validation") {
    CHECK_THROWS_AS(ConvergenceSeries({1}, {1}), DomainError);
    CHECK_THROWS_AS(ConvergenceSeries({1, 2}, {1, -1}), DomainError);
    CHECK_THROWS_AS(ConvergenceSeries({1, 2}, {1}), DomainError);
  }
}
