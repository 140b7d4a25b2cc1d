#include "retrodiff/meanfield/kernel.hpp"

#include <cmath>
#include <numbers>

#include "retrodiff/core/error.hpp"
#include "retrodiff/core/serialize.hpp"

namespace retrodiff::meanfield {

MollifierKernel::MollifierKernel(double bandwidth) : h_(bandwidth) {
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw DomainError("meanfield: kernel bandwidth must be > 0");
}

double MollifierKernel::operator()(double x) const noexcept {
  const double z = x / h_;
  return std::exp(-0.5 * z * z) / (h_ * std::sqrt(2.0 * std::numbers::pi));
}

double MollifierKernel::derivative(double x) const noexcept { return -x / (h_ * h_) * (*this)(x); }

double MollifierKernel::cdf(double x) const noexcept { return 0.5 * std::erfc(-x / (h_ * std::numbers::sqrt2)); }

BandwidthRule BandwidthRule::parse(std::string_view text) {
  BandwidthRule rule;
  auto number = [&](std::string_view s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(s), &used);
      if (used != s.size() || !(v > 0.0)) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bandwidth_rule: '" + std::string(text) + "' needs a positive number");
    }
  };
  if (text == "inverse_n") return rule;
  if (text.starts_with("power:")) {
    rule.kind_ = Kind::power;
    rule.parameter_ = number(text.substr(6));
    return rule;
  }
  if (text.starts_with("fixed:")) {
    rule.kind_ = Kind::fixed;
    rule.parameter_ = number(text.substr(6));
    return rule;
  }
  throw ConfigError("bandwidth_rule: unknown value '" + std::string(text) +
                    "' (expected inverse_n, power:<a>, fixed:<h>)");
}

double BandwidthRule::bandwidth(std::size_t n_particles) const {
  const double n = static_cast<double>(n_particles);
  switch (kind_) {
    case Kind::inverse_n: return 1.0 / n;
    case Kind::power: return std::pow(n, -parameter_);
    case Kind::fixed: return parameter_;
  }
  return 1.0 / n;
}

std::string BandwidthRule::to_string() const {
  switch (kind_) {
    case Kind::inverse_n: return "inverse_n";
    case Kind::power: return "power:" + format_double(parameter_);
    case Kind::fixed: return "fixed:" + format_double(parameter_);
  }
  return "inverse_n";
}

}  // namespace retrodiff::meanfield
