#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwre/distribution.hpp"
#include "rwre/geometry.hpp"
#include "rwre/renewal.hpp"
#include "rwre/stats.hpp"

// Annealed Monte Carlo estimators. Every walk w draws a fresh environment
// keyed by (master_seed, w) and a walk stream keyed by (master_seed, w), so
// a batch samples the annealed law and is bit-reproducible regardless of the
// thread count.

namespace rwre {

struct TransienceVerdict {
  enum class Label { kTransientPlus, kTransientMinus, kUndecided };
  Label label = Label::kUndecided;
  double score = 0;  // fraction(+) - fraction(-)
};

std::string label_name(TransienceVerdict::Label label);

struct TransienceOptions {
  // A walk counts as transient along ell iff X_h.ell >= h^threshold_exponent
  // and the projection stays above level_fraction * h^threshold_exponent over
  // the second half of the walk. Separates ballistic from diffusive scale.
  double threshold_exponent = 0.75;
  double level_fraction = 0.5;
  double verdict_threshold = 0.9;  // fraction needed for a +/- verdict
};

struct TransienceResult {
  ScalarEstimate p_plus;  // Wilson interval for the transient(+) fraction
  std::int64_t n_plus = 0, n_minus = 0, n_undecided = 0, n_walks = 0;
  TransienceVerdict verdict;
  std::vector<double> endpoint_proj;  // per-walk X_h.ell_hat, walk order
  std::vector<std::uint8_t> labels;   // per-walk: 0 = +, 1 = -, 2 = undecided
};

TransienceResult estimate_transience(const DistributionSpec& spec, std::vector<double> ell,
                                     std::int64_t n_walks, std::int64_t horizon,
                                     std::uint64_t master_seed, unsigned threads = 0,
                                     const TransienceOptions& opts = {},
                                     std::int64_t walk_offset = 0);

struct SurvivalResult {
  std::vector<std::pair<std::int64_t, double>> curve;  // (checkpoint, fraction alive)
  ScalarEstimate final_survival;  // upward biased: exits past the horizon are unseen
  std::vector<StoppingResult> exits;  // per-walk cone exit, walk order
};

SurvivalResult estimate_cone_survival(const DistributionSpec& spec, const ConeFrame& frame,
                                      std::int64_t n_walks, std::int64_t horizon,
                                      std::vector<std::int64_t> checkpoints,
                                      std::uint64_t master_seed, unsigned threads = 0,
                                      std::int64_t walk_offset = 0);

// Confirmed inter-renewal blocks pooled over a batch of walks, in walk order.
struct BlockSample {
  struct Item {
    std::int64_t walk = 0;
    Block block;
  };
  std::vector<Item> items;
  std::vector<std::int64_t> ell_int;  // frame direction when integral
  std::int64_t n_walks = 0;
  std::int64_t n_censored_tails = 0;
  std::int64_t n_walks_without_blocks = 0;
  std::int64_t horizon = 0;
  std::int64_t confirm_window = 0;
};

BlockSample collect_blocks(const DistributionSpec& spec, const ConeFrame& frame,
                           std::int64_t n_walks, std::int64_t horizon,
                           std::int64_t confirm_window, std::uint64_t master_seed,
                           unsigned threads = 0, std::int64_t walk_offset = 0);

// Product  E[(X_{tau_2}-X_{tau_1}).ell] * P(cone never exited); equals 1 for
// an integer direction with gcd 1. The two factors come from disjoint walk
// batches so the delta-method standard error is honest.
struct IdentityResult {
  ScalarEstimate product;
  ScalarEstimate step_mean;      // E[(X_{tau_{k+1}}-X_{tau_k}).ell], blocks k>=1
  ScalarEstimate survival;       // direct estimate of P(D_alpha = infinity)
  std::int64_t n_blocks = 0;
};

IdentityResult renewal_identity_check(const DistributionSpec& spec, const ConeFrame& frame,
                                      std::int64_t n_walks, std::int64_t horizon,
                                      std::int64_t confirm_window, std::uint64_t master_seed,
                                      unsigned threads = 0);

// Assembly from precollected ingredients (the sample must carry an integer
// gcd-1 direction).
IdentityResult renewal_identity_from_sample(const BlockSample& sample,
                                            const ScalarEstimate& survival);

// P(R_k finite) against k: geometric decay with ratio P(D_alpha finite).
struct DecayResult {
  std::vector<std::int64_t> finite_counts;  // per k = 0..k_max
  std::vector<double> p_k;
  LineFit fit;                              // log p_k over k
  ScalarEstimate q_direct;                  // P(cone exited from the start anchor)
  double slope_vs_logq_se = 0;              // combined SE of slope - log(q_direct)
  bool degenerate = false;
};

DecayResult geometric_decay_check(const DistributionSpec& spec, const ConeFrame& frame,
                                  std::int64_t n_walks, std::int64_t horizon, int k_max,
                                  std::uint64_t master_seed, unsigned threads = 0);

struct DirectionResult {
  bool defined = false;
  std::vector<double> nu;            // unit mean displacement direction
  std::vector<double> mean_dx;
  std::vector<double> mean_dx_stderr;
  double angular_stderr = 0;         // block bootstrap RMS deviation
  std::int64_t n_blocks = 0;
};

DirectionResult estimate_direction(const BlockSample& sample, std::uint64_t master_seed);

struct VelocityResult {
  std::vector<double> mu;            // mean dx / mean dtau
  std::vector<double> stderrr;       // ratio-estimator linearization
  double mean_dtau = 0;
  std::int64_t n_blocks = 0;
};

VelocityResult estimate_velocity(const BlockSample& sample);

// Independence checks on the block sequence: two-sample KS between even-k
// and odd-k projections, and the lag-1 autocorrelation of dtau over
// within-walk adjacent pairs.
struct IidResult {
  KsResult ks;
  double autocorr = 0;
  double autocorr_bound = 0;  // 3/sqrt(pairs)
  std::int64_t n_pairs = 0;
  bool degenerate = false;    // identical blocks; reported as a pass
  bool pass = false;
};

IidResult iid_blocks_test(const BlockSample& sample);
IidResult iid_blocks_test(const std::vector<BlockSample::Item>& items,
                          const std::vector<std::int64_t>& ell_int);

struct DirectionVerdict {
  std::vector<double> direction;
  double angle_deg = 0;  // signed angle from the base direction (d = 2)
  TransienceResult transience;
};

struct NeighborhoodResult {
  std::vector<DirectionVerdict> verdicts;
  bool all_transient_plus = false;
};

// Runs the transience classifier over a fan of unit directions. For
// mode "cap" the fan spans +-radius_deg around ell; for "halfcircle" it
// spans +-90 degrees and directions with dot(dir, ell) < min_dot are
// excluded by construction. d = 2 only.
NeighborhoodResult neighborhood_scan(const DistributionSpec& spec, std::vector<double> ell,
                                     double radius_deg, int grid_count, double min_dot,
                                     std::int64_t n_walks, std::int64_t horizon,
                                     std::uint64_t master_seed, unsigned threads = 0,
                                     const TransienceOptions& opts = {});

struct ClusterResult {
  struct Cluster {
    std::vector<double> center;
    std::int64_t mass = 0;
  };
  std::vector<Cluster> clusters;       // sorted by mass, descending
  std::int64_t n_points = 0;
  int n_major = 0;                     // clusters holding >= 10% of points
  bool antipodal = false;              // two majors opposite within 5 degrees
  bool violation = false;              // more than two major clusters
};

ClusterResult direction_cluster_analysis(const std::vector<std::vector<double>>& unit_points,
                                         double threshold_deg = 20.0,
                                         double antipodal_tol_deg = 5.0,
                                         double major_mass_fraction = 0.10);

// Per-walk endpoints of an annealed batch, for cluster analysis and detail
// tables.
std::vector<std::vector<std::int64_t>> collect_endpoints(const DistributionSpec& spec,
                                                         std::int64_t n_walks,
                                                         std::int64_t horizon,
                                                         std::uint64_t master_seed,
                                                         unsigned threads = 0);

// Seeds for walk w of a batch.
std::uint64_t walk_env_seed(std::uint64_t master_seed, std::int64_t walk_index);
std::uint64_t walk_stream_seed(std::uint64_t master_seed, std::int64_t walk_index);

}  // namespace rwre
