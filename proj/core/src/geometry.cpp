#include "rwre/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "rwre/detail/exact_compare.hpp"

namespace rwre {

namespace {

using detail::int128;

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Rational on 128-bit words, only used inside the exact Gram-Schmidt where
// intermediate values stay small after per-step reduction.
struct Rat128 {
  int128 num = 0;
  int128 den = 1;

  Rat128() = default;
  Rat128(int128 n) : num(n) {}
  Rat128(int128 n, int128 d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Rat128 operator+(const Rat128& o) const { return Rat128(num * o.den + o.num * den, den * o.den); }
  Rat128 operator-(const Rat128& o) const { return Rat128(num * o.den - o.num * den, den * o.den); }
  Rat128 operator*(const Rat128& o) const { return Rat128(num * o.num, den * o.den); }
  Rat128 operator/(const Rat128& o) const {
    if (o.num == 0) throw std::domain_error("rational division by zero");
    return Rat128(num * o.den, den * o.num);
  }
  bool is_zero() const { return num == 0; }
};

Rat128 dot(const std::vector<Rat128>& a, const std::vector<Rat128>& b) {
  Rat128 s;
  for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

std::vector<std::int64_t> to_primitive(const std::vector<Rat128>& v) {
  int128 lcm = 1;
  for (const auto& r : v) lcm = lcm / gcd128(lcm, r.den) * r.den;
  std::vector<int128> ints(v.size());
  int128 g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].num * (lcm / v[i].den);
    g = gcd128(g, ints[i]);
  }
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    int128 w = ints[i] / g;
    if (w > INT64_MAX || w < INT64_MIN) throw std::overflow_error("basis entry overflow");
    out[i] = static_cast<std::int64_t>(w);
  }
  return out;
}

double dot_d(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

constexpr std::int64_t kMaxExactEntry = 1000000;

}  // namespace

std::vector<std::vector<double>> complete_basis(std::span<const double> ell) {
  const std::size_t d = ell.size();
  double n2 = dot_d(ell, ell);
  if (n2 == 0.0) throw std::invalid_argument("complete_basis: zero direction");

  std::vector<std::vector<double>> accepted;  // orthogonal, unnormalized, ell first
  std::vector<double> ell_v(ell.begin(), ell.end());
  accepted.push_back(ell_v);
  std::vector<std::vector<double>> out;

  for (std::size_t j = 0; j < d; ++j) {
    if (out.size() == d - 1) break;
    std::vector<double> v(d, 0.0);
    v[j] = 1.0;
    for (const auto& u : accepted) {
      double c = dot_d(v, u) / dot_d(u, u);
      for (std::size_t i = 0; i < d; ++i) v[i] -= c * u[i];
    }
    double norm = std::sqrt(dot_d(v, v));
    if (norm < 1e-9) continue;
    accepted.push_back(v);
    std::vector<double> e(d);
    for (std::size_t i = 0; i < d; ++i) e[i] = v[i] / norm;
    out.push_back(std::move(e));
  }
  if (out.size() != d - 1) throw std::runtime_error("complete_basis: failed to complete basis");
  return out;
}

std::vector<std::vector<std::int64_t>> complete_basis_int(std::span<const std::int64_t> ell) {
  const std::size_t d = ell.size();
  bool nonzero = false;
  for (auto v : ell) nonzero |= (v != 0);
  if (!nonzero) throw std::invalid_argument("complete_basis_int: zero direction");

  std::vector<std::vector<Rat128>> accepted;
  std::vector<Rat128> ell_r(d);
  for (std::size_t i = 0; i < d; ++i) ell_r[i] = Rat128(ell[i]);
  accepted.push_back(ell_r);

  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t j = 0; j < d; ++j) {
    if (out.size() == d - 1) break;
    std::vector<Rat128> v(d);
    v[j] = Rat128(1);
    for (const auto& u : accepted) {
      Rat128 c = dot(v, u) / dot(u, u);
      for (std::size_t i = 0; i < d; ++i) v[i] = v[i] - c * u[i];
    }
    bool zero = true;
    for (const auto& r : v) zero &= r.is_zero();
    if (zero) continue;
    out.push_back(to_primitive(v));
    std::vector<Rat128> kept(d);
    for (std::size_t i = 0; i < d; ++i) kept[i] = Rat128(out.back()[i]);
    accepted.push_back(std::move(kept));
  }
  if (out.size() != d - 1) throw std::runtime_error("complete_basis_int: failed to complete basis");
  return out;
}

namespace {

ConeFrame build_frame(std::vector<double> ell, double alpha,
                      std::optional<ConeFrame::Exact> exact) {
  if (alpha <= 0) throw std::invalid_argument("cone aperture must be positive");
  ConeFrame frame;
  frame.d = static_cast<int>(ell.size());
  frame.ell = std::move(ell);
  frame.alpha = alpha;

  double ell_norm2 = dot_d(frame.ell, frame.ell);
  if (ell_norm2 == 0.0) throw std::invalid_argument("cone direction must be nonzero");

  if (exact) {
    // Float basis derived from the exact one so both views agree.
    for (const auto& f : exact->f) {
      double n = 0;
      for (auto v : f) n += static_cast<double>(v) * static_cast<double>(v);
      n = std::sqrt(n);
      std::vector<double> e(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) e[i] = static_cast<double>(f[i]) / n;
      frame.basis.push_back(std::move(e));
    }
    frame.exact = std::move(exact);
  } else {
    frame.basis = complete_basis(frame.ell);
  }

  for (const auto& e : frame.basis) {
    std::vector<double> plus(frame.d), minus(frame.d);
    for (int i = 0; i < frame.d; ++i) {
      plus[i] = frame.ell[i] + frame.alpha * e[i];
      minus[i] = frame.ell[i] - frame.alpha * e[i];
    }
    frame.tilted.push_back(std::move(plus));
    frame.tilted.push_back(std::move(minus));
  }

  frame.c_alpha = std::sqrt(1.0 / ell_norm2 +
                            static_cast<double>(frame.d - 1) / (frame.alpha * frame.alpha));
  return frame;
}

}  // namespace

ConeFrame cone_frame(std::span<const double> ell, double alpha) {
  return build_frame(std::vector<double>(ell.begin(), ell.end()), alpha, std::nullopt);
}

ConeFrame cone_frame(const std::vector<Rat64>& ell, const Rat64& alpha) {
  if (alpha.num <= 0) throw std::invalid_argument("cone aperture must be positive");
  bool integral = true;
  for (const auto& r : ell) integral &= r.is_integer();

  std::vector<double> ell_d(ell.size());
  for (std::size_t i = 0; i < ell.size(); ++i) ell_d[i] = ell[i].to_double();

  if (integral && alpha.num <= kMaxExactEntry && alpha.den <= kMaxExactEntry) {
    ConeFrame::Exact exact;
    exact.ell_int.resize(ell.size());
    bool small = true;
    for (std::size_t i = 0; i < ell.size(); ++i) {
      exact.ell_int[i] = ell[i].num;
      small &= std::llabs(ell[i].num) <= kMaxExactEntry;
    }
    if (small) {
      try {
        exact.f = complete_basis_int(exact.ell_int);
        for (const auto& f : exact.f) {
          std::int64_t n2 = 0;
          for (auto v : f) {
            if (std::llabs(v) > kMaxExactEntry) throw std::overflow_error("large basis entry");
            n2 += v * v;
          }
          exact.f_norm2.push_back(n2);
        }
        exact.alpha_num = alpha.num;
        exact.alpha_den = alpha.den;
        return build_frame(std::move(ell_d), alpha.to_double(), std::move(exact));
      } catch (const std::overflow_error&) {
        // fall through to the float frame
      }
    }
  }
  return build_frame(std::move(ell_d), alpha.to_double(), std::nullopt);
}

namespace {

std::int64_t dot_i(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

bool in_cone(std::span<const std::int64_t> x, const ConeFrame& frame) {
  if (frame.exact) {
    const auto& ex = *frame.exact;
    std::int64_t s = dot_i(x, ex.ell_int);
    for (std::size_t i = 0; i < ex.f.size(); ++i) {
      std::int64_t t = dot_i(x, ex.f[i]);
      // x.(ell + alpha e_i) >= 0  <=>  q*s*sqrt(F) + p*t >= 0
      if (!detail::sqrt_affine_nonneg(ex.alpha_den * s, ex.alpha_num * t, ex.f_norm2[i]))
        return false;
      if (!detail::sqrt_affine_nonneg(ex.alpha_den * s, -ex.alpha_num * t, ex.f_norm2[i]))
        return false;
    }
    return true;
  }
  std::vector<double> xd(x.begin(), x.end());
  return in_cone(std::span<const double>(xd), frame);
}

bool in_cone(std::span<const double> x, const ConeFrame& frame) {
  for (const auto& t : frame.tilted)
    if (dot_d(x, t) < 0.0) return false;
  return true;
}

bool in_cone_axis_form(std::span<const std::int64_t> x, const ConeFrame& frame) {
  if (frame.exact) {
    const auto& ex = *frame.exact;
    std::int64_t s = dot_i(x, ex.ell_int);
    if (frame.d == 1) return true;
    if (s < 0) return false;
    for (std::size_t i = 0; i < ex.f.size(); ++i) {
      std::int64_t t = dot_i(x, ex.f[i]);
      // alpha |x.e_i| <= x.ell  <=>  p^2 t^2 <= q^2 s^2 F
      int128 lhs = static_cast<int128>(ex.alpha_num) * ex.alpha_num * t * t;
      int128 rhs = static_cast<int128>(ex.alpha_den) * ex.alpha_den * s * s * ex.f_norm2[i];
      if (lhs > rhs) return false;
    }
    return true;
  }
  std::vector<double> xd(x.begin(), x.end());
  return in_cone_axis_form(std::span<const double>(xd), frame);
}

bool in_cone_axis_form(std::span<const double> x, const ConeFrame& frame) {
  double s = dot_d(x, frame.ell);
  if (frame.d == 1) return true;
  if (s < 0) return false;
  for (const auto& e : frame.basis)
    if (frame.alpha * std::abs(dot_d(x, e)) > s) return false;
  return true;
}

}  // namespace rwre
