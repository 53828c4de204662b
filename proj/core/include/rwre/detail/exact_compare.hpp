#pragma once

#include <cstdint>

// Sign-exact comparisons of a*sqrt(F) against integers, F > 0. These decide
// cone-boundary questions for integer lattice points without rounding.

namespace rwre::detail {

__extension__ typedef __int128 int128;

// a*sqrt(F) + b >= 0
inline bool sqrt_affine_nonneg(std::int64_t a, std::int64_t b, std::int64_t f_norm2) {
  if (a >= 0 && b >= 0) return true;
  if (a <= 0 && b <= 0) return a == 0 && b == 0;
  int128 lhs = static_cast<int128>(a) * a * f_norm2;  // (a*sqrt(F))^2
  int128 rhs = static_cast<int128>(b) * b;
  if (a >= 0) return lhs >= rhs;  // a*sqrt(F) >= -b > 0
  return rhs >= lhs;              // b >= -a*sqrt(F) > 0
}

// u*sqrt(F) < v
inline bool sqrt_scaled_less(std::int64_t u, std::int64_t v, std::int64_t f_norm2) {
  if (u == 0) return v > 0;
  if (u < 0) {
    if (v >= 0) return true;
    return static_cast<int128>(v) * v < static_cast<int128>(u) * u * f_norm2;
  }
  if (v <= 0) return false;
  return static_cast<int128>(u) * u * f_norm2 < static_cast<int128>(v) * v;
}

}  // namespace rwre::detail
