#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rwre/geometry.hpp"
#include "rwre/trajectory.hpp"

// Cone renewal structure of a trajectory along a frame direction.
//
// The scan runs two stopping-time sequences: S_k, the successive strict
// record times of the projection ell.X, and R_k, the exit time of the cone
// re-anchored at X_{S_k}. After a finite exit the next attempt starts at the
// first time the projection beats the running maximum M_k. The first anchor
// whose cone survives becomes a renewal time tau, and the recursion restarts
// from tau for the later ones.
//
// At a finite horizon "the cone never exits" is approximated by a confirm
// window W: an anchor is confirmed iff W further steps exist and none of
// them leaves the cone. A candidate that runs out of room before its window
// closes sets censored_tail instead of confirming.

namespace rwre {

struct Attempt {
  std::int64_t s = 0;       // anchor time S_k (a strict record time)
  StoppingResult r;         // exit of the cone anchored there, absolute time
  double m = 0;             // running maximum of ell.X up to R_k
};

struct RenewalScan {
  // Literal attempt sequence, censored only at the horizon. It ends at the
  // first attempt whose exit never happens within the trajectory.
  std::vector<Attempt> attempts;
  // Index of the first attempt passing the confirm-window rule, when that
  // attempt has a full window of room; taus.front() == attempts[K].s then.
  std::optional<std::size_t> k_confirmed;
  // All confirmed renewal times, in increasing order.
  std::vector<std::int64_t> taus;
  std::int64_t confirm_window = 0;
  // A candidate record survived to the horizon but had fewer than W steps
  // of room, so it could not be confirmed.
  bool censored_tail = false;
};

RenewalScan cone_renewal_scan(const Trajectory& traj, const ConeFrame& frame,
                              std::int64_t confirm_window);

// Slab variant: the cone exit is replaced by the first strict drop of the
// projection below the anchor level. Every cone renewal time is also a slab
// renewal time at equal W.
RenewalScan slab_renewal_scan(const Trajectory& traj, std::span<const double> ell,
                              std::int64_t confirm_window);

// Inter-renewal block between consecutive confirmed times. Blocks are
// indexed from 1; the pre-tau_1 piece follows a different law and is never
// extracted.
struct Block {
  std::int64_t k = 0;
  std::int64_t dtau = 0;
  std::vector<std::int64_t> dx;
  double sup_norm = 0;  // max displacement norm from X_{tau_k} within the block
};

std::vector<Block> extract_blocks(const RenewalScan& scan, const Trajectory& traj);

// Settling diagnostics of a trajectory into the frame's cone: N is the first
// index from which the walk stays inside through the horizon, C and M the
// extremes of the longitudinal and squared transverse coordinates up to N,
// and alpha1 = min(C/sqrt(M), alpha) the data-driven aperture they imply.
struct ConeDiagnostics {
  bool censored = true;  // membership still failing at the horizon
  std::int64_t settle_index = 0;
  double c_min = 0;
  double m_sq = 0;
  double alpha1 = 0;
};

ConeDiagnostics cone_diagnostics(const Trajectory& traj, const ConeFrame& frame);

}  // namespace rwre
