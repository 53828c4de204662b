#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rwre/rational.hpp"

// Cone geometry around a direction ell: a completed orthogonal basis
// e_2..e_d, the tilted directions ell +- alpha*e_i, the closed convex cone
// they carve out, and the norm constant
//
//   c_alpha = sqrt(1/|ell|^2 + (d-1)/alpha^2),
//
// which bounds |x| <= c_alpha * (x.ell) for every x in the cone.
//
// When ell has integer coordinates and alpha = p/q is rational, membership
// against the cone boundary is decided in exact integer arithmetic so that
// lattice points that sit exactly on a face are classified as inside without
// any floating-point ambiguity. Real-valued ell falls back to strict IEEE
// comparisons with zero tolerance.

namespace rwre {

struct ConeFrame {
  int d = 0;
  std::vector<double> ell;                       // direction, length d
  double alpha = 0;                              // aperture, > 0
  std::vector<std::vector<double>> basis;        // e_2..e_d, unit, orthogonal
  std::vector<std::vector<double>> tilted;       // ell+a*e_2, ell-a*e_2, ...
  double c_alpha = 0;

  // Exact companion data, present when ell is integral and alpha rational.
  struct Exact {
    std::vector<std::int64_t> ell_int;
    std::int64_t alpha_num = 0;                  // alpha = alpha_num/alpha_den
    std::int64_t alpha_den = 1;
    std::vector<std::vector<std::int64_t>> f;    // primitive integer basis, f_i || e_i
    std::vector<std::int64_t> f_norm2;           // |f_i|^2
  };
  std::optional<Exact> exact;

  bool is_exact() const { return exact.has_value(); }
};

// Deterministic Gram-Schmidt completion of a nonzero direction: standard
// basis vectors are taken in index order and candidates whose residual norm
// falls below 1e-9 are skipped. Returns d-1 orthonormal vectors.
std::vector<std::vector<double>> complete_basis(std::span<const double> ell);

// Exact counterpart for integer directions: primitive integer vectors,
// pairwise orthogonal and orthogonal to ell, parallel to the float basis.
std::vector<std::vector<std::int64_t>> complete_basis_int(std::span<const std::int64_t> ell);

ConeFrame cone_frame(std::span<const double> ell, double alpha);
ConeFrame cone_frame(const std::vector<Rat64>& ell, const Rat64& alpha);

// Closed-cone membership via the tilted dot products x.(ell +- alpha e_i) >= 0.
bool in_cone(std::span<const std::int64_t> x, const ConeFrame& frame);
bool in_cone(std::span<const double> x, const ConeFrame& frame);

// Same set through the other characterization, alpha |x.e_i| <= x.ell,
// kept as an independent route for cross-checks.
bool in_cone_axis_form(std::span<const std::int64_t> x, const ConeFrame& frame);
bool in_cone_axis_form(std::span<const double> x, const ConeFrame& frame);

}  // namespace rwre
