#include "retrodiff/core/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "retrodiff/core/error.hpp"

namespace retrodiff {
namespace {

constexpr double kWavefunctionNormTolerance = 1e-6;
constexpr double kNegativeSlack = 1e-9;

double squared_norm(const UniformGrid& grid, const std::vector<std::complex<double>>& amps) {
  std::vector<double> density(amps.size());
  std::transform(amps.begin(), amps.end(), density.begin(), [](auto a) { return std::norm(a); });
  return trapezoid(density, grid.step());
}

void check_state_grid(double q0, double hbar, const UniformGrid& x_grid) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("core: hbar must be > 0");
  const double width = std::sqrt(hbar);
  if (x_grid.start() > q0 - 8.0 * width || x_grid.stop() < q0 + 8.0 * width)
    throw DomainError("core: x grid [" + std::to_string(x_grid.start()) + ", " +
                      std::to_string(x_grid.stop()) + "] does not span q0 ± 8√ħ");
  if (x_grid.step() > width / 8.0 * (1.0 + 1e-12))
    throw DomainError("core: x grid spacing " + std::to_string(x_grid.step()) + " exceeds √ħ/8");
}

}  // namespace

Wavefunction::Wavefunction(UniformGrid x_grid, std::vector<std::complex<double>> amplitudes,
                           double hbar)
    : x_grid_(std::move(x_grid)), amplitudes_(std::move(amplitudes)), hbar_(hbar) {
  if (!(hbar_ > 0.0)) throw DomainError("core: hbar must be > 0");
  if (amplitudes_.size() != x_grid_.size())
    throw DomainError("core: wavefunction has " + std::to_string(amplitudes_.size()) +
                      " amplitudes for " + std::to_string(x_grid_.size()) + " grid points");
  const double n = norm();
  if (!(std::abs(n - 1.0) <= kWavefunctionNormTolerance))
    throw DomainError("core: wavefunction norm " + std::to_string(n) + " is not 1");
}

Wavefunction Wavefunction::normalized(UniformGrid x_grid, std::vector<std::complex<double>> amplitudes,
                                      double hbar) {
  if (amplitudes.size() != x_grid.size()) throw DomainError("core: amplitude/grid size mismatch");
  const double n = squared_norm(x_grid, amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("core: cannot normalize a null state");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& a : amplitudes) a *= scale;
  return Wavefunction(std::move(x_grid), std::move(amplitudes), hbar);
}

double Wavefunction::norm() const { return squared_norm(x_grid_, amplitudes_); }

double Wavefunction::position_mean() const {
  std::vector<double> f(amplitudes_.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = x_grid_[k] * std::norm(amplitudes_[k]);
  return trapezoid(f, x_grid_.step()) / norm();
}

double Wavefunction::position_variance() const {
  const double mean = position_mean();
  std::vector<double> f(amplitudes_.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double d = x_grid_[k] - mean;
    f[k] = d * d * std::norm(amplitudes_[k]);
  }
  return trapezoid(f, x_grid_.step()) / norm();
}

Wavefunction coherent_state(double p0, double q0, double hbar, const UniformGrid& x_grid) {
  check_state_grid(q0, hbar, x_grid);
  const double prefactor = std::pow(std::numbers::pi * hbar, -0.25);
  const std::complex<double> global = std::polar(1.0, -p0 * q0 / (2.0 * hbar));
  std::vector<std::complex<double>> amps(x_grid.size());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double x = x_grid[k];
    const double envelope = prefactor * std::exp(-(x - q0) * (x - q0) / (2.0 * hbar));
    amps[k] = global * std::polar(envelope, p0 * x / hbar);
  }
  return Wavefunction::normalized(x_grid, std::move(amps), hbar);
}

Wavefunction gaussian_packet(double p0, double q0, double sigma_x, double hbar,
                             const UniformGrid& x_grid) {
  if (!(sigma_x > 0.0)) throw DomainError("core: packet width must be > 0");
  check_state_grid(q0, hbar, x_grid);
  std::vector<std::complex<double>> amps(x_grid.size());
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double x = x_grid[k];
    const double envelope = std::exp(-(x - q0) * (x - q0) / (4.0 * sigma_x * sigma_x));
    amps[k] = std::polar(envelope, p0 * x / hbar);
  }
  return Wavefunction::normalized(x_grid, std::move(amps), hbar);
}

HusimiGrid::HusimiGrid(UniformGrid p_grid, UniformGrid q_grid, std::vector<double> values, double hbar)
    : p_grid_(std::move(p_grid)), q_grid_(std::move(q_grid)), values_(std::move(values)), hbar_(hbar) {
  if (values_.size() != p_grid_.size() * q_grid_.size())
    throw DomainError("core: Husimi grid value count does not match its axes");
  double peak = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("core: Husimi grid holds a non-finite value");
    peak = std::max(peak, v);
  }
  for (double v : values_)
    if (v < -kNegativeSlack * peak) throw DomainError("core: Husimi grid holds a negative value");
}

double HusimiGrid::total_mass() const {
  return berezin_expectation([](double, double) { return 1.0; }, *this);
}

HusimiGrid husimi(const Wavefunction& psi, const UniformGrid& p_grid, const UniformGrid& q_grid,
                  double normalization_tolerance) {
  const double hbar = psi.hbar();
  const UniformGrid& xs = psi.x_grid();
  const auto& amps = psi.amplitudes();
  const std::size_t nx = xs.size();
  const double dx = xs.step();
  const double prefactor = std::pow(std::numbers::pi * hbar, -0.25);
  // Envelope below exp(-72) is dropped from the overlap sum.
  const double cutoff = 12.0 * std::sqrt(hbar);

  // Trapezoid weights folded into ψ.
  std::vector<std::complex<double>> weighted(nx);
  for (std::size_t k = 0; k < nx; ++k)
    weighted[k] = amps[k] * ((k == 0 || k + 1 == nx) ? 0.5 * dx : dx);

  std::vector<double> values(p_grid.size() * q_grid.size());
  std::vector<std::complex<double>> plane(nx);
  std::vector<double> envelope(nx);
  for (std::size_t ip = 0; ip < p_grid.size(); ++ip) {
    const double p = p_grid[ip];
    for (std::size_t k = 0; k < nx; ++k) plane[k] = std::polar(1.0, -p * xs[k] / hbar);
    for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
      const double q = q_grid[iq];
      const double lo = std::ceil((q - cutoff - xs.start()) / dx);
      const double hi = std::floor((q + cutoff - xs.start()) / dx);
      const auto k0 = static_cast<std::size_t>(std::clamp(lo, 0.0, static_cast<double>(nx)));
      const auto k1 = static_cast<std::size_t>(std::clamp(hi + 1.0, 0.0, static_cast<double>(nx)));
      std::complex<double> overlap{0.0, 0.0};
      for (std::size_t k = k0; k < k1; ++k) {
        const double y = xs[k] - q;
        overlap += plane[k] * weighted[k] * (prefactor * std::exp(-y * y / (2.0 * hbar)));
      }
      values[ip * q_grid.size() + iq] = std::norm(overlap) / (2.0 * std::numbers::pi * hbar);
    }
  }
  HusimiGrid out(p_grid, q_grid, std::move(values), hbar);
  const double mass = out.total_mass();
  if (!(std::abs(mass - 1.0) <= normalization_tolerance))
    throw CoverageError("core: Husimi mass " + std::to_string(mass) +
                        " deviates from 1 beyond tolerance; the (p, q) grid does not capture the state");
  return out;
}

double berezin_expectation(const std::function<double(double, double)>& f, const HusimiGrid& density) {
  const auto& ps = density.p_grid();
  const auto& qs = density.q_grid();
  std::vector<double> row(qs.size());
  std::vector<double> col(ps.size());
  for (std::size_t ip = 0; ip < ps.size(); ++ip) {
    for (std::size_t iq = 0; iq < qs.size(); ++iq) row[iq] = f(ps[ip], qs[iq]) * density(ip, iq);
    col[ip] = trapezoid(row, qs.step());
  }
  const double result = trapezoid(col, ps.step());
  if (!std::isfinite(result)) throw DomainError("core: Berezin expectation is not finite");
  return result;
}

}  // namespace retrodiff
