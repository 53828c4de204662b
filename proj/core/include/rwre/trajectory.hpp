#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/geometry.hpp"

namespace rwre {

// Finite-horizon stand-in for "time = infinity": an event either happened at
// time t or had not happened by the horizon. Estimators must treat censoring
// as information, never as a sentinel value.
struct StoppingResult {
  bool hit = false;
  std::int64_t t = 0;

  static StoppingResult at(std::int64_t t) { return {true, t}; }
  static StoppingResult censored() { return {false, 0}; }

  friend bool operator==(const StoppingResult& a, const StoppingResult& b) {
    return a.hit == b.hit && (!a.hit || a.t == b.t);
  }
};

// A quenched walk: start site plus ordered unit-step offsets, stored as
// direction codes in the fixed order (+e1,-e1,...,+ed,-ed). Positions are
// recomputed by prefix sums on demand.
struct Trajectory {
  int d = 0;
  std::vector<std::int64_t> start;
  std::vector<std::uint8_t> steps;
  std::uint64_t walk_seed = 0;

  std::int64_t horizon() const { return static_cast<std::int64_t>(steps.size()); }
  std::vector<std::int64_t> position(std::int64_t n) const;

  // Streams positions X_0..X_horizon into fn(n, span<const i64>).
  template <class Fn>
  void each_position(Fn&& fn) const {
    std::vector<std::int64_t> x = start;
    fn(std::int64_t{0}, std::span<const std::int64_t>(x));
    for (std::size_t n = 0; n < steps.size(); ++n) {
      int axis = steps[n] >> 1;
      x[axis] += (steps[n] & 1) ? -1 : +1;
      fn(static_cast<std::int64_t>(n + 1), std::span<const std::int64_t>(x));
    }
  }
};

inline int step_axis(std::uint8_t code) { return code >> 1; }
inline int step_sign(std::uint8_t code) { return (code & 1) ? -1 : +1; }

// CDF inversion of a transition vector under the global direction order.
// u must lie in [0, 1).
std::uint8_t step_sample(std::span<const double> probs, double u);

// Per-simulation memo of realized sites; purely an accelerator, results are
// identical with or without it.
struct SiteCache {
  std::unordered_map<std::uint64_t, std::vector<double>> map;
};

// Samples a quenched trajectory of exactly `horizon` steps. Step n uses the
// value of the walk stream at counter n, so trajectories at longer horizons
// extend shorter ones bit-for-bit.
Trajectory simulate(const Environment& env, std::vector<std::int64_t> start,
                    std::int64_t horizon, std::uint64_t walk_seed, SiteCache* cache = nullptr);

// First n > from_index with X_n.ell > u (times absolute), else censored.
StoppingResult hit_halfspace(const Trajectory& traj, std::span<const double> ell, double u,
                             std::int64_t from_index);

// First n > anchor_index with X_n.ell <= X_anchor.ell, else censored.
StoppingResult return_time(const Trajectory& traj, std::span<const double> ell,
                           std::int64_t anchor_index);

// First n >= anchor_index with X_n - X_anchor outside the cone, else
// censored. The relative origin is the apex, so nothing exits at the anchor.
StoppingResult cone_exit(const Trajectory& traj, const ConeFrame& frame,
                         std::int64_t anchor_index);

// Backtrack times: rt(1) = return_time from 0, rt(n) anchored at rt(n-1);
// censoring propagates.
std::vector<StoppingResult> backtrack_times(const Trajectory& traj, std::span<const double> ell,
                                            int n_max);

// One record per position: "n x_1 ... x_d".
void write_trace(const Trajectory& traj, std::ostream& os);

}  // namespace rwre
