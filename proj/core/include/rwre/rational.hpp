#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwre {

// Small exact rational, used for directions and cone apertures parsed from
// config text ("3/2", "0.25", "-1"). Keeps lattice geometry exact.
struct Rat64 {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat64() = default;
  Rat64(std::int64_t n) : num(n), den(1) {}
  Rat64(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rat64& a, const Rat64& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// Parses "p/q", plain integers and decimal literals into exact rationals.
Rat64 parse_rational(const std::string& text);

// Unique positive multiple of a nonzero rational vector that has integer
// entries with gcd(|entries|) = 1.
std::vector<std::int64_t> gcd_normalize(const std::vector<Rat64>& ell);

}  // namespace rwre
