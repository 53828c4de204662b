#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>

// Counter-based keyed randomness.
//
// Everything in the simulator draws from stateless streams: the n-th value of
// a stream is a pure function of (key, n), where the key itself is derived by
// hashing a master seed, a domain tag and a payload (site coordinates, walk
// index, ...). This is what makes environments lazily realizable over all of
// Z^d and batches reproducible regardless of scheduling.

namespace rwre::rng {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer (Steele, Lea, Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// i-th output of the splitmix64 sequence seeded with `key`.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
  return mix64(key + kGamma * (counter + 1));
}

// Domain tags keep the environment, walk and bookkeeping streams disjoint
// even when they share a master seed.
enum class Domain : std::uint64_t {
  kEnvironmentSite = 0x0b5f5e1a22c817e1ull,
  kEnvironmentSeed = 0x1f8e4b6a0c2d9537ull,
  kWalkStep = 0x34d3f6c8a9b1d20bull,
  kWalkSeed = 0x6e2a9c0f7b3d541dull,
  kBootstrap = 0x5a0d3c7e912fb864ull,
};

// Key derivation: seed and tag first, then payload words folded in order.
// Multi-word payloads (site coordinates) are folded in their fixed
// little-endian serialization order, i.e. coordinate 0 first.
constexpr std::uint64_t derive_key(std::uint64_t seed, Domain domain,
                                   std::span<const std::uint64_t> words = {}) {
  std::uint64_t h = mix64(seed ^ static_cast<std::uint64_t>(domain));
  h = mix64(h ^ (kGamma * static_cast<std::uint64_t>(words.size())));
  for (std::uint64_t w : words) h = mix64(h ^ w);
  return h;
}

constexpr std::uint64_t derive_key(std::uint64_t seed, Domain domain,
                                   std::initializer_list<std::uint64_t> words) {
  return derive_key(seed, domain, std::span<const std::uint64_t>(words.begin(), words.size()));
}

// Uniform in [0, 1) from the top 53 bits.
constexpr double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]; safe argument for log().
constexpr double unit_open_from_bits(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Sequential view over a keyed stream. Copies are independent replays.
class Stream {
 public:
  explicit Stream(std::uint64_t key, std::uint64_t start = 0) : key_(key), ctr_(start) {}

  std::uint64_t next_u64() { return at(key_, ctr_++); }
  double next_unit() { return unit_from_bits(next_u64()); }
  double next_unit_open() { return unit_open_from_bits(next_u64()); }

  // Standard normal via Box-Muller; the pair's second value is cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_unit_open();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
  double next_gamma(double shape) {
    if (shape < 1.0) {
      double g = next_gamma(shape + 1.0);
      double u = next_unit_open();
      return g * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = next_normal();
      double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      double v = t * t * t;
      double u = next_unit_open();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rwre::rng
