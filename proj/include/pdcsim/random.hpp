#pragma once

// Random streams and the scalar variates the simulator needs.
//
// The standard <random> distributions are implementation-defined, so every
// variate here is a fixed algorithm on top of xoshiro256**. Streams with the
// same seed produce the same sequence on every standard library.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace pdcsim {

// SplitMix64 finalizer. Used both to expand seeds and as the counter mixer
// that derives independent sub-stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of sub-stream `index` under `seed`.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return substream_seed(substream_seed(seed, a), b);
}

// xoshiro256** 1.0. Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
  using result_type = std::uint64_t;

  explicit constexpr RandomStream(std::uint64_t seed = 0) noexcept { reseed(seed); }

  constexpr void reseed(std::uint64_t seed) noexcept {
    std::uint64_t z = seed;
    for (auto& word : s_) {
      word = mix64(z);
      z += 0x9e3779b97f4a7c15ULL;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  friend constexpr bool operator==(const RandomStream&, const RandomStream&) = default;

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
};

// Uniform on [0, 1), 53-bit resolution.
inline double uniform01(RandomStream& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1]; safe as a log argument.
inline double uniform_open_zero(RandomStream& rng) noexcept {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Standard normal, Marsaglia polar method (second variate discarded so the
// draw count per call depends only on the stream).
inline double standard_normal(RandomStream& rng) noexcept {
  double u, v, s;
  do {
    u = 2.0 * uniform01(rng) - 1.0;
    v = 2.0 * uniform01(rng) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

// Exponential with unit mean.
inline double standard_exponential(RandomStream& rng) noexcept {
  return -std::log(uniform_open_zero(rng));
}

// Gamma(shape, scale = 1), Marsaglia-Tsang. Shapes below one use the
// U^(1/shape) boost.
inline double standard_gamma(double shape, RandomStream& rng) noexcept {
  if (shape < 1.0) {
    const double boost = std::pow(uniform_open_zero(rng), 1.0 / shape);
    return standard_gamma(shape + 1.0, rng) * boost;
  }
  if (shape == 1.0) return standard_exponential(rng);
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open_zero(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Poisson count by accumulating unit-rate exponential gaps until the sum
// passes `mean`. Exact for any mean; cost is linear in the mean, which is
// already the cost of placing the points.
inline std::uint64_t poisson(double mean, RandomStream& rng) noexcept {
  if (!(mean > 0.0)) return 0;
  std::uint64_t k = 0;
  double t = standard_exponential(rng);
  while (t <= mean) {
    ++k;
    t += standard_exponential(rng);
  }
  return k;
}

inline bool bernoulli(double p, RandomStream& rng) noexcept { return uniform01(rng) < p; }

inline double uniform_angle(RandomStream& rng) noexcept {
  return 2.0 * std::numbers::pi * uniform01(rng);
}

}  // namespace pdcsim
