#include "rwre/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rwre/parallel.hpp"
#include "rwre/rng.hpp"
#include "rwre/trajectory.hpp"

namespace rwre {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> unit_vector(std::vector<double> v) {
  double n2 = 0;
  for (double x : v) n2 += x * x;
  if (n2 == 0) throw std::invalid_argument("direction must be nonzero");
  double n = std::sqrt(n2);
  for (double& x : v) x /= n;
  return v;
}

Trajectory run_walk(const DistributionSpec& spec, std::int64_t horizon,
                    std::uint64_t master_seed, std::int64_t walk_index) {
  Environment env(spec, walk_env_seed(master_seed, walk_index));
  std::vector<std::int64_t> start(spec.d, 0);
  return simulate(env, std::move(start), horizon, walk_stream_seed(master_seed, walk_index));
}

double dot_id(std::span<const std::int64_t> x, std::span<const double> v) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(x[i]) * v[i];
  return s;
}

}  // namespace

std::uint64_t walk_env_seed(std::uint64_t master_seed, std::int64_t walk_index) {
  return rng::derive_key(master_seed, rng::Domain::kEnvironmentSeed,
                         {static_cast<std::uint64_t>(walk_index)});
}

std::uint64_t walk_stream_seed(std::uint64_t master_seed, std::int64_t walk_index) {
  return rng::derive_key(master_seed, rng::Domain::kWalkSeed,
                         {static_cast<std::uint64_t>(walk_index)});
}

std::string label_name(TransienceVerdict::Label label) {
  switch (label) {
    case TransienceVerdict::Label::kTransientPlus: return "transient+";
    case TransienceVerdict::Label::kTransientMinus: return "transient-";
    case TransienceVerdict::Label::kUndecided: return "undecided";
  }
  return "?";
}

TransienceResult estimate_transience(const DistributionSpec& spec, std::vector<double> ell,
                                     std::int64_t n_walks, std::int64_t horizon,
                                     std::uint64_t master_seed, unsigned threads,
                                     const TransienceOptions& opts, std::int64_t walk_offset) {
  if (horizon < 16) throw std::invalid_argument("transience classifier needs horizon >= 16");
  if (n_walks < 1) throw std::invalid_argument("need at least one walk");
  std::vector<double> dir = unit_vector(std::move(ell));

  const double threshold = std::pow(static_cast<double>(horizon), opts.threshold_exponent);
  const double level = opts.level_fraction * threshold;
  const std::int64_t half = horizon / 2;

  std::vector<std::uint8_t> labels(n_walks, 2);
  std::vector<double> endpoints(n_walks, 0.0);

  parallel_for(static_cast<std::size_t>(n_walks), threads, [&](std::size_t w) {
    Trajectory traj =
        run_walk(spec, horizon, master_seed, static_cast<std::int64_t>(w) + walk_offset);
    double endpoint = 0;
    double window_min = std::numeric_limits<double>::infinity();
    double window_max = -std::numeric_limits<double>::infinity();
    traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
      double p = dot_id(x, dir);
      if (n >= half) {
        window_min = std::min(window_min, p);
        window_max = std::max(window_max, p);
      }
      if (n == horizon) endpoint = p;
    });
    endpoints[w] = endpoint;
    if (endpoint >= threshold && window_min >= level)
      labels[w] = 0;
    else if (endpoint <= -threshold && window_max <= -level)
      labels[w] = 1;
    else
      labels[w] = 2;
  });

  TransienceResult result;
  result.n_walks = n_walks;
  result.endpoint_proj = std::move(endpoints);
  for (auto l : labels) {
    if (l == 0) ++result.n_plus;
    else if (l == 1) ++result.n_minus;
    else ++result.n_undecided;
  }
  result.labels = std::move(labels);
  result.p_plus = proportion_estimate(result.n_plus, n_walks);
  result.p_plus.n_censored = result.n_undecided;
  double frac_plus = static_cast<double>(result.n_plus) / static_cast<double>(n_walks);
  double frac_minus = static_cast<double>(result.n_minus) / static_cast<double>(n_walks);
  result.verdict.score = frac_plus - frac_minus;
  if (frac_plus >= opts.verdict_threshold)
    result.verdict.label = TransienceVerdict::Label::kTransientPlus;
  else if (frac_minus >= opts.verdict_threshold)
    result.verdict.label = TransienceVerdict::Label::kTransientMinus;
  else
    result.verdict.label = TransienceVerdict::Label::kUndecided;
  return result;
}

SurvivalResult estimate_cone_survival(const DistributionSpec& spec, const ConeFrame& frame,
                                      std::int64_t n_walks, std::int64_t horizon,
                                      std::vector<std::int64_t> checkpoints,
                                      std::uint64_t master_seed, unsigned threads,
                                      std::int64_t walk_offset) {
  if (checkpoints.empty()) throw std::invalid_argument("need at least one checkpoint");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 0 || checkpoints[i] > horizon)
      throw std::invalid_argument("checkpoints must lie within the horizon");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be increasing");
  }

  std::vector<StoppingResult> exits(n_walks);
  parallel_for(static_cast<std::size_t>(n_walks), threads, [&](std::size_t w) {
    Trajectory traj =
        run_walk(spec, horizon, master_seed, static_cast<std::int64_t>(w) + walk_offset);
    exits[w] = cone_exit(traj, frame, 0);
  });

  SurvivalResult result;
  std::int64_t final_alive = 0;
  for (std::int64_t cp : checkpoints) {
    std::int64_t alive = 0;
    for (const auto& e : exits)
      if (!e.hit || e.t > cp) ++alive;
    result.curve.emplace_back(cp, static_cast<double>(alive) / static_cast<double>(n_walks));
    final_alive = alive;
  }
  result.final_survival = proportion_estimate(final_alive, n_walks);
  result.final_survival.n_censored = final_alive;  // survivors are right-censored
  result.exits = std::move(exits);
  return result;
}

BlockSample collect_blocks(const DistributionSpec& spec, const ConeFrame& frame,
                           std::int64_t n_walks, std::int64_t horizon,
                           std::int64_t confirm_window, std::uint64_t master_seed,
                           unsigned threads, std::int64_t walk_offset) {
  std::vector<std::vector<Block>> per_walk(n_walks);
  std::vector<std::uint8_t> tails(n_walks, 0);
  parallel_for(static_cast<std::size_t>(n_walks), threads, [&](std::size_t w) {
    Trajectory traj =
        run_walk(spec, horizon, master_seed, static_cast<std::int64_t>(w) + walk_offset);
    RenewalScan scan = cone_renewal_scan(traj, frame, confirm_window);
    tails[w] = scan.censored_tail ? 1 : 0;
    per_walk[w] = extract_blocks(scan, traj);
  });

  BlockSample sample;
  sample.n_walks = n_walks;
  sample.horizon = horizon;
  sample.confirm_window = confirm_window;
  if (frame.exact) sample.ell_int = frame.exact->ell_int;
  for (std::int64_t w = 0; w < n_walks; ++w) {
    sample.n_censored_tails += tails[w];
    if (per_walk[w].empty()) ++sample.n_walks_without_blocks;
    for (auto& b : per_walk[w]) sample.items.push_back({w + walk_offset, std::move(b)});
  }
  return sample;
}

namespace {

double block_proj(const Block& b, std::span<const std::int64_t> ell_int) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < ell_int.size(); ++i) s += b.dx[i] * ell_int[i];
  return static_cast<double>(s);
}

}  // namespace

IdentityResult renewal_identity_from_sample(const BlockSample& sample,
                                            const ScalarEstimate& survival) {
  if (sample.ell_int.empty())
    throw std::invalid_argument("identity check needs an integer direction (use gcd_normalize)");
  std::int64_t g = 0;
  for (auto v : sample.ell_int) g = std::gcd(g, v < 0 ? -v : v);
  if (g != 1) throw std::invalid_argument("identity check needs gcd(ell) = 1");
  if (static_cast<std::int64_t>(sample.items.size()) < 100)
    throw InsufficientDataError("identity check: fewer than 100 usable blocks (" +
                                std::to_string(sample.items.size()) + ")");

  std::vector<double> values;
  values.reserve(sample.items.size());
  for (const auto& item : sample.items) values.push_back(block_proj(item.block, sample.ell_int));

  IdentityResult result;
  result.n_blocks = static_cast<std::int64_t>(values.size());
  result.step_mean = mean_estimate(values);
  result.survival = survival;

  double e = result.step_mean.value;
  double p = result.survival.value;
  result.product.value = e * p;
  result.product.stderrr = std::sqrt(p * p * result.step_mean.stderrr * result.step_mean.stderrr +
                                     e * e * result.survival.stderrr * result.survival.stderrr);
  result.product.ci_lo = result.product.value - 1.959963984540054 * result.product.stderrr;
  result.product.ci_hi = result.product.value + 1.959963984540054 * result.product.stderrr;
  result.product.n_samples = result.n_blocks;
  return result;
}

IdentityResult renewal_identity_check(const DistributionSpec& spec, const ConeFrame& frame,
                                      std::int64_t n_walks, std::int64_t horizon,
                                      std::int64_t confirm_window, std::uint64_t master_seed,
                                      unsigned threads) {
  if (!frame.exact)
    throw std::invalid_argument("identity check needs an integer direction (use gcd_normalize)");
  BlockSample blocks =
      collect_blocks(spec, frame, n_walks, horizon, confirm_window, master_seed, threads, 0);
  // Fresh walks for the survival factor keep the two estimates independent.
  SurvivalResult survival = estimate_cone_survival(spec, frame, n_walks, horizon, {horizon},
                                                   master_seed, threads, n_walks);
  return renewal_identity_from_sample(blocks, survival.final_survival);
}

DecayResult geometric_decay_check(const DistributionSpec& spec, const ConeFrame& frame,
                                  std::int64_t n_walks, std::int64_t horizon, int k_max,
                                  std::uint64_t master_seed, unsigned threads) {
  if (k_max < 3) throw std::invalid_argument("decay check needs k_max >= 3");

  std::vector<std::vector<std::uint8_t>> finite(n_walks);
  std::vector<std::uint8_t> exit_hit(n_walks, 0);
  parallel_for(static_cast<std::size_t>(n_walks), threads, [&](std::size_t w) {
    Trajectory traj = run_walk(spec, horizon, master_seed, static_cast<std::int64_t>(w));
    RenewalScan scan = cone_renewal_scan(traj, frame, 1);
    auto& flags = finite[w];
    flags.assign(k_max + 1, 0);
    for (std::size_t k = 0; k < scan.attempts.size() && k <= static_cast<std::size_t>(k_max); ++k)
      flags[k] = scan.attempts[k].r.hit ? 1 : 0;
    exit_hit[w] = cone_exit(traj, frame, 0).hit ? 1 : 0;
  });

  DecayResult result;
  result.finite_counts.assign(k_max + 1, 0);
  for (std::int64_t w = 0; w < n_walks; ++w)
    for (int k = 0; k <= k_max; ++k) result.finite_counts[k] += finite[w][k];
  for (int k = 0; k <= k_max; ++k)
    result.p_k.push_back(static_cast<double>(result.finite_counts[k]) /
                         static_cast<double>(n_walks));

  std::int64_t exits = std::accumulate(exit_hit.begin(), exit_hit.end(), std::int64_t{0});
  result.q_direct = proportion_estimate(exits, n_walks);

  std::vector<double> xs, ys;
  for (int k = 0; k <= k_max; ++k) {
    if (result.finite_counts[k] > 0 && result.finite_counts[k] < n_walks) {
      xs.push_back(static_cast<double>(k));
      ys.push_back(std::log(result.p_k[k]));
    }
  }
  if (xs.size() < 3 || result.q_direct.value <= 0 || result.q_direct.value >= 1) {
    result.degenerate = true;
    return result;
  }
  result.fit = fit_line(xs, ys);
  result.degenerate = result.fit.degenerate;
  double se_logq = result.q_direct.stderrr / result.q_direct.value;
  result.slope_vs_logq_se =
      std::sqrt(result.fit.slope_stderr * result.fit.slope_stderr + se_logq * se_logq);
  return result;
}

DirectionResult estimate_direction(const BlockSample& sample, std::uint64_t master_seed) {
  const auto& items = sample.items;
  if (items.size() < 100)
    throw InsufficientDataError("direction estimate: fewer than 100 blocks");
  const int d = static_cast<int>(items[0].block.dx.size());

  DirectionResult result;
  result.n_blocks = static_cast<std::int64_t>(items.size());
  result.mean_dx.assign(d, 0.0);
  result.mean_dx_stderr.assign(d, 0.0);
  for (const auto& item : items)
    for (int i = 0; i < d; ++i) result.mean_dx[i] += static_cast<double>(item.block.dx[i]);
  for (int i = 0; i < d; ++i) result.mean_dx[i] /= static_cast<double>(items.size());
  for (const auto& item : items)
    for (int i = 0; i < d; ++i) {
      double delta = static_cast<double>(item.block.dx[i]) - result.mean_dx[i];
      result.mean_dx_stderr[i] += delta * delta;
    }
  double n = static_cast<double>(items.size());
  for (int i = 0; i < d; ++i)
    result.mean_dx_stderr[i] = std::sqrt(result.mean_dx_stderr[i] / (n - 1) / n);

  double norm = 0, se2 = 0;
  for (int i = 0; i < d; ++i) {
    norm += result.mean_dx[i] * result.mean_dx[i];
    se2 += result.mean_dx_stderr[i] * result.mean_dx_stderr[i];
  }
  norm = std::sqrt(norm);
  if (norm <= 3.0 * std::sqrt(se2)) {
    result.defined = false;
    return result;
  }
  result.defined = true;
  result.nu.resize(d);
  for (int i = 0; i < d; ++i) result.nu[i] = result.mean_dx[i] / norm;

  // Block bootstrap for the angular spread of the direction estimate.
  const int kResamples = 200;
  rng::Stream stream(rng::derive_key(master_seed, rng::Domain::kBootstrap));
  double sq_sum = 0;
  std::vector<double> mean(d);
  for (int b = 0; b < kResamples; ++b) {
    std::fill(mean.begin(), mean.end(), 0.0);
    for (std::size_t s = 0; s < items.size(); ++s) {
      const Block& blk = items[stream.next_u64() % items.size()].block;
      for (int i = 0; i < d; ++i) mean[i] += static_cast<double>(blk.dx[i]);
    }
    double m_norm = 0;
    for (int i = 0; i < d; ++i) m_norm += mean[i] * mean[i];
    m_norm = std::sqrt(m_norm);
    if (m_norm == 0) continue;
    double cosang = 0;
    for (int i = 0; i < d; ++i) cosang += mean[i] / m_norm * result.nu[i];
    double angle = std::acos(std::clamp(cosang, -1.0, 1.0));
    sq_sum += angle * angle;
  }
  result.angular_stderr = std::sqrt(sq_sum / kResamples);
  return result;
}

VelocityResult estimate_velocity(const BlockSample& sample) {
  const auto& items = sample.items;
  if (items.size() < 100)
    throw InsufficientDataError("velocity estimate: fewer than 100 blocks");
  const int d = static_cast<int>(items[0].block.dx.size());

  VelocityResult result;
  result.n_blocks = static_cast<std::int64_t>(items.size());
  double sum_dtau = 0;
  std::vector<double> sum_dx(d, 0.0);
  for (const auto& item : items) {
    sum_dtau += static_cast<double>(item.block.dtau);
    for (int i = 0; i < d; ++i) sum_dx[i] += static_cast<double>(item.block.dx[i]);
  }
  double n = static_cast<double>(items.size());
  result.mean_dtau = sum_dtau / n;
  result.mu.resize(d);
  result.stderrr.assign(d, 0.0);
  for (int i = 0; i < d; ++i) result.mu[i] = sum_dx[i] / sum_dtau;
  for (const auto& item : items)
    for (int i = 0; i < d; ++i) {
      double r = static_cast<double>(item.block.dx[i]) -
                 result.mu[i] * static_cast<double>(item.block.dtau);
      result.stderrr[i] += r * r;
    }
  for (int i = 0; i < d; ++i)
    result.stderrr[i] = std::sqrt(result.stderrr[i] / (n - 1) / n) / result.mean_dtau;
  return result;
}

IidResult iid_blocks_test(const BlockSample& sample) {
  return iid_blocks_test(sample.items, sample.ell_int);
}

IidResult iid_blocks_test(const std::vector<BlockSample::Item>& items,
                          const std::vector<std::int64_t>& ell_int) {
  if (items.size() < 200)
    throw InsufficientDataError("independence test: fewer than 200 blocks");
  if (ell_int.empty())
    throw std::invalid_argument("independence test needs an integer direction");

  IidResult result;
  std::vector<double> even, odd;
  bool all_same = true;
  double first_proj = block_proj(items[0].block, ell_int);
  std::int64_t first_dtau = items[0].block.dtau;
  for (const auto& item : items) {
    double p = block_proj(item.block, ell_int);
    all_same = all_same && p == first_proj && item.block.dtau == first_dtau;
    (item.block.k % 2 == 0 ? even : odd).push_back(p);
  }

  std::vector<double> a, b;
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    if (items[i].walk == items[i + 1].walk && items[i + 1].block.k == items[i].block.k + 1) {
      a.push_back(static_cast<double>(items[i].block.dtau));
      b.push_back(static_cast<double>(items[i + 1].block.dtau));
    }
  }
  result.n_pairs = static_cast<std::int64_t>(a.size());

  if (all_same) {
    result.degenerate = true;
    result.ks.pvalue = 1.0;
    result.pass = true;
    return result;
  }
  if (even.empty() || odd.empty() || result.n_pairs < 2)
    throw InsufficientDataError("independence test: too few blocks per parity class");

  result.ks = ks_two_sample(std::move(even), std::move(odd));
  bool corr_degenerate = false;
  result.autocorr = pearson_correlation(a, b, &corr_degenerate);
  result.autocorr_bound = 3.0 / std::sqrt(static_cast<double>(result.n_pairs));
  result.degenerate = corr_degenerate;
  result.pass = result.ks.pvalue > 0.01 &&
                (corr_degenerate || std::abs(result.autocorr) < result.autocorr_bound);
  return result;
}

NeighborhoodResult neighborhood_scan(const DistributionSpec& spec, std::vector<double> ell,
                                     double radius_deg, int grid_count, double min_dot,
                                     std::int64_t n_walks, std::int64_t horizon,
                                     std::uint64_t master_seed, unsigned threads,
                                     const TransienceOptions& opts) {
  if (spec.d != 2) throw std::invalid_argument("neighborhood scan supports d = 2");
  if (grid_count < 1) throw std::invalid_argument("neighborhood scan: empty grid");
  if (horizon < 16) throw std::invalid_argument("transience classifier needs horizon >= 16");
  std::vector<double> base = unit_vector(std::move(ell));
  double base_angle = std::atan2(base[1], base[0]);

  struct Dir {
    std::vector<double> v;
    double angle_deg;
  };
  std::vector<Dir> dirs;
  for (int i = 0; i < grid_count; ++i) {
    double off = grid_count == 1
                     ? 0.0
                     : -radius_deg + 2.0 * radius_deg * static_cast<double>(i) /
                                         static_cast<double>(grid_count - 1);
    double a = base_angle + off * kPi / 180.0;
    std::vector<double> v{std::cos(a), std::sin(a)};
    if (v[0] * base[0] + v[1] * base[1] < min_dot) continue;
    dirs.push_back({std::move(v), off});
  }
  if (dirs.empty()) throw std::invalid_argument("neighborhood scan: all directions filtered out");

  const double threshold = std::pow(static_cast<double>(horizon), opts.threshold_exponent);
  const double level = opts.level_fraction * threshold;
  const std::int64_t half = horizon / 2;
  const std::size_t nd = dirs.size();

  // Each walk is classified against every direction in one pass.
  std::vector<std::vector<std::uint8_t>> labels(n_walks);
  std::vector<double> end_proj_base(n_walks, 0.0);
  parallel_for(static_cast<std::size_t>(n_walks), threads, [&](std::size_t w) {
    Trajectory traj = run_walk(spec, horizon, master_seed, static_cast<std::int64_t>(w));
    std::vector<double> endpoint(nd, 0.0);
    std::vector<double> wmin(nd, std::numeric_limits<double>::infinity());
    std::vector<double> wmax(nd, -std::numeric_limits<double>::infinity());
    traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
      if (n < half && n < horizon) return;
      for (std::size_t j = 0; j < nd; ++j) {
        double p = dot_id(x, dirs[j].v);
        if (n >= half) {
          wmin[j] = std::min(wmin[j], p);
          wmax[j] = std::max(wmax[j], p);
        }
        if (n == horizon) endpoint[j] = p;
      }
    });
    auto& lab = labels[w];
    lab.assign(nd, 2);
    for (std::size_t j = 0; j < nd; ++j) {
      if (endpoint[j] >= threshold && wmin[j] >= level)
        lab[j] = 0;
      else if (endpoint[j] <= -threshold && wmax[j] <= -level)
        lab[j] = 1;
    }
    end_proj_base[w] = dot_id(traj.position(horizon), base);
  });

  NeighborhoodResult result;
  result.all_transient_plus = true;
  for (std::size_t j = 0; j < nd; ++j) {
    DirectionVerdict dv;
    dv.direction = dirs[j].v;
    dv.angle_deg = dirs[j].angle_deg;
    dv.transience.n_walks = n_walks;
    for (std::int64_t w = 0; w < n_walks; ++w) {
      if (labels[w][j] == 0) ++dv.transience.n_plus;
      else if (labels[w][j] == 1) ++dv.transience.n_minus;
      else ++dv.transience.n_undecided;
    }
    dv.transience.p_plus = proportion_estimate(dv.transience.n_plus, n_walks);
    double fp = static_cast<double>(dv.transience.n_plus) / static_cast<double>(n_walks);
    double fm = static_cast<double>(dv.transience.n_minus) / static_cast<double>(n_walks);
    dv.transience.verdict.score = fp - fm;
    if (fp >= opts.verdict_threshold)
      dv.transience.verdict.label = TransienceVerdict::Label::kTransientPlus;
    else if (fm >= opts.verdict_threshold)
      dv.transience.verdict.label = TransienceVerdict::Label::kTransientMinus;
    else
      dv.transience.verdict.label = TransienceVerdict::Label::kUndecided;
    if (dv.transience.verdict.label != TransienceVerdict::Label::kTransientPlus)
      result.all_transient_plus = false;
    result.verdicts.push_back(std::move(dv));
  }
  return result;
}

ClusterResult direction_cluster_analysis(const std::vector<std::vector<double>>& unit_points,
                                         double threshold_deg, double antipodal_tol_deg,
                                         double major_mass_fraction) {
  ClusterResult result;
  std::vector<std::vector<double>> points;
  for (const auto& p : unit_points) {
    double n2 = 0;
    for (double v : p) n2 += v * v;
    if (n2 == 0) continue;
    std::vector<double> u(p);
    double n = std::sqrt(n2);
    for (double& v : u) v /= n;
    points.push_back(std::move(u));
  }
  if (points.empty()) throw InsufficientDataError("cluster analysis: all walks at the origin");
  result.n_points = static_cast<std::int64_t>(points.size());
  const int d = static_cast<int>(points[0].size());
  const double cos_thr = std::cos(threshold_deg * kPi / 180.0);

  struct Raw {
    std::vector<double> sum;
    std::int64_t mass = 0;
  };
  std::vector<Raw> raw;
  for (const auto& p : points) {
    int best = -1;
    double best_cos = cos_thr;
    for (std::size_t c = 0; c < raw.size(); ++c) {
      double n2 = 0, dot = 0;
      for (int i = 0; i < d; ++i) {
        n2 += raw[c].sum[i] * raw[c].sum[i];
        dot += raw[c].sum[i] * p[i];
      }
      double cosang = n2 > 0 ? dot / std::sqrt(n2) : -1.0;
      if (cosang >= best_cos) {
        best_cos = cosang;
        best = static_cast<int>(c);
      }
    }
    if (best < 0) {
      raw.push_back({p, 1});
    } else {
      for (int i = 0; i < d; ++i) raw[best].sum[i] += p[i];
      ++raw[best].mass;
    }
  }

  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.mass > b.mass; });
  for (const auto& r : raw) {
    ClusterResult::Cluster c;
    c.mass = r.mass;
    double n2 = 0;
    for (double v : r.sum) n2 += v * v;
    double n = std::sqrt(n2);
    c.center = r.sum;
    if (n > 0)
      for (double& v : c.center) v /= n;
    result.clusters.push_back(std::move(c));
  }

  double major_floor = major_mass_fraction * static_cast<double>(result.n_points);
  for (const auto& c : result.clusters)
    if (static_cast<double>(c.mass) >= major_floor) ++result.n_major;
  result.violation = result.n_major > 2;
  if (result.n_major == 2) {
    double dot = 0;
    for (int i = 0; i < d; ++i) dot += result.clusters[0].center[i] * result.clusters[1].center[i];
    double angle = std::acos(std::clamp(-dot, -1.0, 1.0));  // angle to the antipode
    result.antipodal = angle <= antipodal_tol_deg * kPi / 180.0;
  }
  return result;
}

std::vector<std::vector<std::int64_t>> collect_endpoints(const DistributionSpec& spec,
                                                         std::int64_t n_walks,
                                                         std::int64_t horizon,
                                                         std::uint64_t master_seed,
                                                         unsigned threads) {
  std::vector<std::vector<std::int64_t>> endpoints(n_walks);
  parallel_for(static_cast<std::size_t>(n_walks), threads, [&](std::size_t w) {
    Trajectory traj = run_walk(spec, horizon, master_seed, static_cast<std::int64_t>(w));
    endpoints[w] = traj.position(horizon);
  });
  return endpoints;
}

}  // namespace rwre
