#pragma once

#include <cstdint>
#include <random>

namespace retrodiff::sde {

/// Standard normal variates from a 64-bit Mersenne Twister via the Marsaglia
/// polar method. Output depends only on the seed and the call sequence.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent noise channels of one trajectory or particle.
enum class Channel : std::uint64_t { momentum = 0, position = 1 };

/// Seeded family of streams. stream(i, c) is a pure function of
/// (master_seed, i, c).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed) noexcept : master_seed_(master_seed) {}

  [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }
  [[nodiscard]] NormalStream stream(std::uint64_t index, Channel channel) const;
  /// Child source for replicate `index`, independent of every stream(i, c).
  [[nodiscard]] RandomSource child(std::uint64_t index) const;

 private:
  std::uint64_t master_seed_;
};

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace retrodiff::sde
