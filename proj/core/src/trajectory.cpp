#include "rwre/trajectory.hpp"

#include <ostream>
#include <stdexcept>

#include "rwre/rng.hpp"

namespace rwre {

std::vector<std::int64_t> Trajectory::position(std::int64_t n) const {
  if (n < 0 || n > horizon()) throw std::out_of_range("position index past horizon");
  std::vector<std::int64_t> x = start;
  for (std::int64_t i = 0; i < n; ++i) x[step_axis(steps[i])] += step_sign(steps[i]);
  return x;
}

std::uint8_t step_sample(std::span<const double> probs, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("step_sample: u outside [0,1)");
  double acc = 0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] > 0) last_positive = j;
    acc += probs[j];
    if (u < acc) return static_cast<std::uint8_t>(j);
  }
  return static_cast<std::uint8_t>(last_positive);  // u swallowed by rounding
}

Trajectory simulate(const Environment& env, std::vector<std::int64_t> start,
                    std::int64_t horizon, std::uint64_t walk_seed, SiteCache* cache) {
  if (horizon < 0) throw std::invalid_argument("simulate: negative horizon");
  if (static_cast<int>(start.size()) != env.d())
    throw std::invalid_argument("simulate: start dimension mismatch");

  Trajectory traj;
  traj.d = env.d();
  traj.start = start;
  traj.walk_seed = walk_seed;
  traj.steps.reserve(static_cast<std::size_t>(horizon));

  const std::uint64_t step_key = rng::derive_key(walk_seed, rng::Domain::kWalkStep);
  std::vector<std::int64_t> x = std::move(start);
  SiteCache local;
  SiteCache& memo = cache ? *cache : local;
  const bool site_constant = env.spec().family == Family::kDeterministic ||
                             env.spec().family == Family::kDriftPerturbedUniform;
  std::vector<double> constant_probs;
  if (site_constant) constant_probs = env.site_probs(x);

  for (std::int64_t n = 0; n < horizon; ++n) {
    const std::vector<double>* probs;
    if (site_constant) {
      probs = &constant_probs;
    } else {
      std::uint64_t key = env.site_key(x);
      auto it = memo.map.find(key);
      if (it == memo.map.end()) it = memo.map.emplace(key, env.site_probs(x)).first;
      probs = &it->second;
    }
    double u = rng::unit_from_bits(rng::at(step_key, static_cast<std::uint64_t>(n)));
    std::uint8_t code = step_sample(*probs, u);
    traj.steps.push_back(code);
    x[step_axis(code)] += step_sign(code);
  }
  return traj;
}

namespace {

double dot(std::span<const std::int64_t> x, std::span<const double> v) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(x[i]) * v[i];
  return s;
}

}  // namespace

StoppingResult hit_halfspace(const Trajectory& traj, std::span<const double> ell, double u,
                             std::int64_t from_index) {
  if (from_index < 0 || from_index > traj.horizon())
    throw std::invalid_argument("hit_halfspace: from_index out of range");
  StoppingResult result = StoppingResult::censored();
  traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    if (result.hit || n <= from_index) return;
    if (dot(x, ell) > u) result = StoppingResult::at(n);
  });
  return result;
}

StoppingResult return_time(const Trajectory& traj, std::span<const double> ell,
                           std::int64_t anchor_index) {
  if (anchor_index < 0 || anchor_index > traj.horizon())
    throw std::invalid_argument("return_time: anchor out of range");
  double level = dot(traj.position(anchor_index), ell);
  StoppingResult result = StoppingResult::censored();
  traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    if (result.hit || n <= anchor_index) return;
    if (dot(x, ell) <= level) result = StoppingResult::at(n);
  });
  return result;
}

StoppingResult cone_exit(const Trajectory& traj, const ConeFrame& frame,
                         std::int64_t anchor_index) {
  if (anchor_index < 0 || anchor_index > traj.horizon())
    throw std::invalid_argument("cone_exit: anchor out of range");
  std::vector<std::int64_t> anchor = traj.position(anchor_index);
  std::vector<std::int64_t> rel(traj.d);
  StoppingResult result = StoppingResult::censored();
  traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    if (result.hit || n <= anchor_index) return;
    for (int i = 0; i < traj.d; ++i) rel[i] = x[i] - anchor[i];
    if (!in_cone(std::span<const std::int64_t>(rel), frame)) result = StoppingResult::at(n);
  });
  return result;
}

std::vector<StoppingResult> backtrack_times(const Trajectory& traj, std::span<const double> ell,
                                            int n_max) {
  if (n_max < 1) throw std::invalid_argument("backtrack_times: n_max must be >= 1");
  std::vector<StoppingResult> out;
  out.reserve(n_max);
  std::int64_t anchor = 0;
  bool alive = true;
  for (int k = 0; k < n_max; ++k) {
    if (!alive) {
      out.push_back(StoppingResult::censored());
      continue;
    }
    StoppingResult r = return_time(traj, ell, anchor);
    out.push_back(r);
    if (r.hit)
      anchor = r.t;
    else
      alive = false;
  }
  return out;
}

void write_trace(const Trajectory& traj, std::ostream& os) {
  traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    os << n;
    for (auto v : x) os << ' ' << v;
    os << '\n';
  });
}

}  // namespace rwre
