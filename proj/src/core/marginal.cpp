#include "retrodiff/core/marginal.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "retrodiff/core/error.hpp"

namespace retrodiff {
namespace {

constexpr double kDensityFloor = 1e-30;

double normal_pdf(double x, double mean, double variance) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

}  // namespace

GaussianMarginal::GaussianMarginal(TimeFunction mean, TimeFunction variance)
    : mean_(std::move(mean)), variance_(std::move(variance)) {
  if (!mean_ || !variance_) throw DomainError("core: Gaussian marginal needs mean and variance");
}

GaussianMarginal GaussianMarginal::constant_variance(TimeFunction mean, double variance) {
  if (!(variance > 0.0)) throw DomainError("core: Gaussian variance must be > 0");
  return GaussianMarginal(std::move(mean), [variance](double) { return variance; });
}

GaussianMarginal GaussianMarginal::stationary(double mean, double variance) {
  return constant_variance([mean](double) { return mean; }, variance);
}

double GaussianMarginal::mean(double t) const {
  const double m = mean_(t);
  if (!std::isfinite(m)) throw DomainError("core: Gaussian mean is not finite at t=" + std::to_string(t));
  return m;
}

double GaussianMarginal::variance(double t) const {
  const double v = variance_(t);
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError("core: Gaussian variance is not positive at t=" + std::to_string(t));
  return v;
}

double GaussianMarginal::density(double q, double t) const { return normal_pdf(q, mean(t), variance(t)); }

double GaussianMarginal::cdf(double q, double t) const {
  return 0.5 * std::erfc(-(q - mean(t)) / std::sqrt(2.0 * variance(t)));
}

double GaussianMarginal::score(double q, double t) const { return -(q - mean(t)) / variance(t); }

GaussianPhaseSolution amplifier_solution(double p0, double q0) {
  return GaussianPhaseSolution{
      .p_mean0 = p0,
      .q_mean0 = q0,
      .variance = 1.0,
      .p_marginal = GaussianMarginal::constant_variance([p0](double t) { return p0 * std::exp(-t); }, 1.0),
      .q_marginal = GaussianMarginal::constant_variance([q0](double t) { return q0 * std::exp(t); }, 1.0),
  };
}

HusimiGrid tabulate(const GaussianPhaseSolution& solution, const UniformGrid& p_grid,
                    const UniformGrid& q_grid, double t, double hbar) {
  std::vector<double> pv(p_grid.size()), qv(q_grid.size());
  for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = solution.p_marginal.density(p_grid[i], t);
  for (std::size_t j = 0; j < qv.size(); ++j) qv[j] = solution.q_marginal.density(q_grid[j], t);
  std::vector<double> values(pv.size() * qv.size());
  for (std::size_t i = 0; i < pv.size(); ++i)
    for (std::size_t j = 0; j < qv.size(); ++j) values[i * qv.size() + j] = pv[i] * qv[j];
  return HusimiGrid(p_grid, q_grid, std::move(values), hbar);
}

DensityGrid1D::DensityGrid1D(UniformGrid q_grid, std::vector<double> values)
    : q_grid_(std::move(q_grid)), values_(std::move(values)) {
  if (values_.size() != q_grid_.size()) throw DomainError("core: density grid size mismatch");
  for (double v : values_)
    if (!std::isfinite(v) || v < 0.0) throw DomainError("core: density grid values must be finite and >= 0");
}

double DensityGrid1D::integral() const { return trapezoid(values_, q_grid_.step()); }

double DensityGrid1D::density(double q) const {
  const double pos = (q - q_grid_.start()) / q_grid_.step();
  const double last = static_cast<double>(q_grid_.size() - 1);
  if (!(pos >= 0.0 && pos <= last))
    throw SupportError("core: q=" + std::to_string(q) + " lies outside the density grid");
  const auto k = std::min(static_cast<std::size_t>(pos), q_grid_.size() - 2);
  const double w = pos - static_cast<double>(k);
  return (1.0 - w) * values_[k] + w * values_[k + 1];
}

double DensityGrid1D::score(double q) const {
  if (density(q) <= kDensityFloor)
    throw SupportError("core: density at q=" + std::to_string(q) + " is below the 1e-30 floor");
  const std::size_t n = q_grid_.size();
  const double h = q_grid_.step();
  auto log_at = [&](std::size_t k) {
    if (values_[k] <= kDensityFloor)
      throw SupportError("core: density grid node " + std::to_string(k) + " is below the 1e-30 floor");
    return std::log(values_[k]);
  };
  auto node_score = [&](std::size_t k) {
    if (k == 0) return (log_at(1) - log_at(0)) / h;
    if (k + 1 == n) return (log_at(n - 1) - log_at(n - 2)) / h;
    return (log_at(k + 1) - log_at(k - 1)) / (2.0 * h);
  };
  const double pos = (q - q_grid_.start()) / h;
  const auto k = std::min(static_cast<std::size_t>(pos), n - 2);
  const double w = pos - static_cast<double>(k);
  if (w == 0.0) return node_score(k);
  return (1.0 - w) * node_score(k) + w * node_score(k + 1);
}

DensityGrid1D marginal_q(const HusimiGrid& density, double tolerance) {
  const auto& ps = density.p_grid();
  const auto& qs = density.q_grid();
  std::vector<double> column(ps.size());
  std::vector<double> out(qs.size());
  for (std::size_t iq = 0; iq < qs.size(); ++iq) {
    for (std::size_t ip = 0; ip < ps.size(); ++ip) column[ip] = std::max(density(ip, iq), 0.0);
    out[iq] = trapezoid(column, ps.step());
  }
  DensityGrid1D marginal(qs, std::move(out));
  const double mass = marginal.integral();
  if (!(std::abs(mass - 1.0) <= tolerance))
    throw CoverageError("core: q-marginal mass " + std::to_string(mass) + " is not 1 within tolerance");
  return marginal;
}

double score(const GaussianMarginal& mu, double q, double t) { return mu.score(q, t); }

double score(const DensityGrid1D& mu, double q, double) { return mu.score(q); }

double score(const MarginalFlow& mu, double q, double t) {
  return std::visit([&](const auto& m) { return score(m, q, t); }, mu);
}

GaussianMarginal free_particle_q_marginal(double p0, double q0, double mass) {
  if (!(mass > 0.0)) throw DomainError("core: free particle mass must be > 0");
  return GaussianMarginal([=](double t) { return q0 + p0 * t / mass; },
                          [mass](double t) { return 1.0 + (t / mass) * (t / mass); });
}

double free_particle_density(double p0, double q0, double mass, double p, double q, double t) {
  return normal_pdf(p, p0, 1.0) * normal_pdf(q - p * t / mass, q0, 1.0);
}

}  // namespace retrodiff
