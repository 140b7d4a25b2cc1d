#include "retrodiff/sde/random.hpp"

#include <cmath>

namespace retrodiff::sde {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double NormalStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

NormalStream RandomSource::stream(std::uint64_t index, Channel channel) const {
  const std::uint64_t lane = splitmix64(index * 2 + static_cast<std::uint64_t>(channel));
  return NormalStream(splitmix64(master_seed_ ^ lane));
}

RandomSource RandomSource::child(std::uint64_t index) const {
  // Odd tag keeps child seeds off the stream lane sequence.
  return RandomSource(splitmix64(splitmix64(master_seed_ + 0x5bd1e995ULL) ^ splitmix64(~index)));
}

}  // namespace retrodiff::sde
