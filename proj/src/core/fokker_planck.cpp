#include "retrodiff/core/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retrodiff/core/error.hpp"

namespace retrodiff {
namespace {

constexpr double kBoundaryMassLimit = 1e-8;
constexpr double kStabilityFactor = 0.2;

struct Coefficients {
  std::vector<double> p_drift;
  std::vector<double> q_drift;
  std::vector<double> half_b2;
  double max_b2 = 0.0;
  double max_drift = 0.0;
};

Coefficients evaluate(const HusimiGrid& density, const DiffusionModel& model, const FokkerPlanckOptions& o) {
  const auto& ps = density.p_grid();
  const auto& qs = density.q_grid();
  const std::size_t n = ps.size() * qs.size();
  Coefficients c{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < qs.size(); ++j) {
      const std::size_t k = i * qs.size() + j;
      const double p = ps[i], q = qs[j];
      c.p_drift[k] = model.a1(p, q, o.t);
      c.q_drift[k] = o.guidance ? guidance_drift(model, *o.guidance, p, q, o.t, o.convention)
                                : model.a2(p, q, o.t);
      const double b2 = model.b2(p, q, o.t);
      c.half_b2[k] = 0.5 * b2;
      c.max_b2 = std::max(c.max_b2, b2);
      c.max_drift = std::max({c.max_drift, std::abs(c.p_drift[k]), std::abs(c.q_drift[k])});
    }
  }
  return c;
}

double max_step(const HusimiGrid& density, const Coefficients& c) {
  const double h = std::min(density.p_grid().step(), density.q_grid().step());
  double bound = std::numeric_limits<double>::infinity();
  if (c.max_b2 > 0.0) bound = std::min(bound, kStabilityFactor * h * h / c.max_b2);
  if (c.max_drift > 0.0) bound = std::min(bound, kStabilityFactor * h / c.max_drift);
  return bound;
}

double boundary_mass(const HusimiGrid& density) {
  const std::size_t np = density.p_grid().size(), nq = density.q_grid().size();
  double sum = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      if (i == 0 || j == 0 || i + 1 == np || j + 1 == nq) sum += std::abs(density(i, j));
    }
  }
  return sum * density.p_grid().step() * density.q_grid().step();
}

}  // namespace

double fokker_planck_max_step(const HusimiGrid& density, const DiffusionModel& model,
                              const FokkerPlanckOptions& options) {
  return max_step(density, evaluate(density, model, options));
}

HusimiGrid fokker_planck_step(const HusimiGrid& density, const DiffusionModel& model, double dt,
                              const FokkerPlanckOptions& options) {
  if (!(dt > 0.0)) throw StepSizeError("core: Fokker-Planck step needs dt > 0");
  const double edge = boundary_mass(density);
  if (edge > kBoundaryMassLimit)
    throw CoverageError("core: boundary mass " + std::to_string(edge) +
                        " exceeds 1e-8; widen the (p, q) grid");

  const Coefficients c = evaluate(density, model, options);
  const bool signed_q = !options.guidance;
  if (signed_q && c.max_b2 > 0.0)
    throw StepSizeError("core: the signed q-diffusion -½∂_q²(b²Q) has no stable explicit step; "
                        "supply a guidance marginal to advance q in forward-time form");
  const double bound = max_step(density, c);
  if (dt > bound)
    throw StepSizeError("core: dt=" + std::to_string(dt) + " exceeds the stability bound " +
                        std::to_string(bound));

  const std::size_t np = density.p_grid().size(), nq = density.q_grid().size();
  const double dp = density.p_grid().step(), dq = density.q_grid().step();
  const auto& v = density.values();
  std::vector<double> out(v.size(), 0.0);
  const double q_diffusion_sign = signed_q ? -1.0 : 1.0;

  for (std::size_t i = 1; i + 1 < np; ++i) {
    for (std::size_t j = 1; j + 1 < nq; ++j) {
      const std::size_t k = i * nq + j;
      const std::size_t kp = k + nq, km = k - nq, kq = k + 1, kmq = k - 1;
      const double flux_p = (c.p_drift[kp] * v[kp] - c.p_drift[km] * v[km]) / (2.0 * dp);
      const double flux_q = (c.q_drift[kq] * v[kq] - c.q_drift[kmq] * v[kmq]) / (2.0 * dq);
      const double diff_p =
          (c.half_b2[kp] * v[kp] - 2.0 * c.half_b2[k] * v[k] + c.half_b2[km] * v[km]) / (dp * dp);
      const double diff_q =
          (c.half_b2[kq] * v[kq] - 2.0 * c.half_b2[k] * v[k] + c.half_b2[kmq] * v[kmq]) / (dq * dq);
      out[k] = v[k] + dt * (-flux_p - flux_q + diff_p + q_diffusion_sign * diff_q);
    }
  }
  return HusimiGrid(density.p_grid(), density.q_grid(), std::move(out), density.hbar());
}

HusimiGrid fokker_planck_evolve(HusimiGrid density, const DiffusionModel& model, double dt,
                                std::size_t n_steps, FokkerPlanckOptions options) {
  const double t0 = options.t;
  for (std::size_t k = 0; k < n_steps; ++k) {
    options.t = t0 + static_cast<double>(k) * dt;
    density = fokker_planck_step(density, model, dt, options);
  }
  return density;
}

double l1_distance(const HusimiGrid& a, const HusimiGrid& b) {
  if (!(a.p_grid() == b.p_grid()) || !(a.q_grid() == b.q_grid()))
    throw DomainError("core: L1 distance needs grids with identical axes");
  const std::size_t nq = a.q_grid().size();
  std::vector<double> row(nq), col(a.p_grid().size());
  for (std::size_t i = 0; i < col.size(); ++i) {
    for (std::size_t j = 0; j < nq; ++j) row[j] = std::abs(a(i, j) - b(i, j));
    col[i] = trapezoid(row, a.q_grid().step());
  }
  return trapezoid(col, a.p_grid().step());
}

GridMoments moments(const HusimiGrid& density) {
  const double mass = density.total_mass();
  return {mass, berezin_expectation([](double p, double) { return p; }, density) / mass,
          berezin_expectation([](double, double q) { return q; }, density) / mass};
}

}  // namespace retrodiff
