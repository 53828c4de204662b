#include "rwre/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "rwre/estimators.hpp"
#include "rwre/oracle.hpp"
#include "rwre/parallel.hpp"
#include "rwre/renewal.hpp"
#include "rwre/report.hpp"
#include "rwre/trajectory.hpp"
#include "rwre/version.hpp"

namespace rwre {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> ell_doubles(const std::vector<Rat64>& ell) {
  std::vector<double> out(ell.size());
  for (std::size_t i = 0; i < ell.size(); ++i) out[i] = ell[i].to_double();
  return out;
}

std::vector<Rat64> effective_ell(const ExperimentConfig& cfg) {
  if (!cfg.ell.empty()) return cfg.ell;
  return {Rat64(1)};  // d = 1 default direction
}

// Integer gcd-1 direction for experiments that require one; notes the
// normalization when it changes the entries.
std::vector<Rat64> integer_ell(const ExperimentConfig& cfg, std::string* notice) {
  std::vector<Rat64> ell = effective_ell(cfg);
  std::vector<std::int64_t> ints = gcd_normalize(ell);
  bool changed = false;
  for (std::size_t i = 0; i < ell.size(); ++i)
    changed |= !(ell[i].is_integer() && ell[i].num == ints[i]);
  std::vector<Rat64> out;
  for (auto v : ints) out.emplace_back(v);
  if (changed && notice) {
    *notice = "direction normalized to integer gcd-1 form (";
    for (std::size_t i = 0; i < out.size(); ++i)
      *notice += (i ? "," : "") + std::to_string(out[i].num);
    *notice += ")";
  }
  return out;
}

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> cps;
  for (std::int64_t t = 16; t < horizon; t *= 4) cps.push_back(t);
  if (cps.empty() || cps.back() != horizon) cps.push_back(horizon);
  return cps;
}

json estimate_json(const ScalarEstimate& e) {
  return json{{"value", e.value},
              {"stderr", e.stderrr},
              {"ci95", {e.ci_lo, e.ci_hi}},
              {"n_samples", e.n_samples},
              {"n_censored", e.n_censored}};
}

std::string blocks_csv(const BlockSample& sample, int d) {
  std::string csv = "walk_index,k,dtau";
  for (int i = 1; i <= d; ++i) csv += ",dx_" + std::to_string(i);
  csv += ",sup_norm,censored\n";
  for (const auto& item : sample.items) {
    csv += std::to_string(item.walk) + "," + std::to_string(item.block.k) + "," +
           std::to_string(item.block.dtau);
    for (auto v : item.block.dx) csv += "," + std::to_string(v);
    csv += "," + format_double(item.block.sup_norm) + ",0\n";
  }
  return csv;
}

struct Artifacts {
  std::filesystem::path dir;
  std::uint64_t master_seed = 0;
  json summary;

  void write(const std::string& name, const std::string& content) const {
    write_text_atomic(dir / name, content);
  }
  void write_plot(const std::string& name, const std::string& x_name, const std::string& y_name,
                  const std::vector<std::pair<double, double>>& points) const {
    std::string head = std::string("# ") + kToolName + " " + kToolVersion +
                       " seed=" + std::to_string(master_seed) + "\n";
    write(name, head + plot_series(x_name, y_name, points));
  }
  void finish() const {
    write_text_atomic(dir / "summary.json", summary.dump(2) + "\n");
  }
};

std::vector<std::pair<double, double>> int_histogram(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> hist;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    hist.emplace_back(static_cast<double>(values[i]), static_cast<double>(j - i));
    i = j;
  }
  return hist;
}

std::vector<std::pair<double, double>> ecdf_points(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    pts.emplace_back(values[i], static_cast<double>(i + 1) / static_cast<double>(values.size()));
  }
  return pts;
}

void run_transience(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  TransienceOptions opts;
  opts.threshold_exponent = cfg.threshold_exponent;
  opts.level_fraction = cfg.level_fraction;
  opts.verdict_threshold = cfg.verdict_threshold;
  TransienceResult res = estimate_transience(cfg.spec, ell_doubles(effective_ell(cfg)),
                                             cfg.n_walks, cfg.horizon, cfg.master_seed, threads,
                                             opts);
  art.summary["results"] = {
      {"p_transient_plus", estimate_json(res.p_plus)},
      {"n_plus", res.n_plus},
      {"n_minus", res.n_minus},
      {"n_undecided", res.n_undecided},
      {"verdict", label_name(res.verdict.label)},
      {"score", res.verdict.score},
  };

  std::string csv = "walk_index,endpoint_proj,label\n";
  for (std::int64_t w = 0; w < res.n_walks; ++w)
    csv += std::to_string(w) + "," + format_double(res.endpoint_proj[w]) + "," +
           label_name(static_cast<TransienceVerdict::Label>(res.labels[w])) + "\n";
  art.write("walks.csv", csv);

  double scale = std::pow(static_cast<double>(cfg.horizon), cfg.threshold_exponent);
  std::vector<double> scaled = res.endpoint_proj;
  for (double& v : scaled) v /= scale;
  art.write_plot("plot_endpoint_ecdf.txt", "endpoint_over_threshold", "ecdf",
                 ecdf_points(std::move(scaled)));
}

void run_cone_survival(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  ConeFrame frame = cone_frame(effective_ell(cfg), cfg.alpha);
  std::vector<std::int64_t> cps =
      cfg.checkpoints.empty() ? default_checkpoints(cfg.horizon) : cfg.checkpoints;
  SurvivalResult res = estimate_cone_survival(cfg.spec, frame, cfg.n_walks, cfg.horizon, cps,
                                              cfg.master_seed, threads);
  json curve = json::array();
  std::vector<std::pair<double, double>> plot;
  for (auto [t, s] : res.curve) {
    curve.push_back({{"t", t}, {"survival", s}});
    plot.emplace_back(static_cast<double>(t), s);
  }
  art.summary["results"] = {
      {"survival_final", estimate_json(res.final_survival)},
      {"bias", "upward: exits after the final checkpoint are not observed"},
      {"curve", curve},
  };
  art.write_plot("plot_survival.txt", "t", "survival", plot);

  std::string csv = "walk_index,exit_time,censored\n";
  for (std::size_t w = 0; w < res.exits.size(); ++w)
    csv += std::to_string(w) + "," + std::to_string(res.exits[w].hit ? res.exits[w].t : -1) +
           "," + (res.exits[w].hit ? "0" : "1") + "\n";
  art.write("walks.csv", csv);
}

void run_renewal_stats(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  ConeFrame frame = cone_frame(effective_ell(cfg), cfg.alpha);
  std::vector<double> ell = ell_doubles(effective_ell(cfg));

  struct WalkStats {
    std::int64_t n_taus = 0, n_slab_taus = 0;
    bool subset_ok = true, censored_tail = false;
    ConeDiagnostics diag;
    std::vector<Block> blocks;
  };
  std::vector<WalkStats> stats(cfg.n_walks);
  parallel_for(static_cast<std::size_t>(cfg.n_walks), threads, [&](std::size_t w) {
    Environment env(cfg.spec, walk_env_seed(cfg.master_seed, w));
    Trajectory traj = simulate(env, std::vector<std::int64_t>(cfg.spec.d, 0), cfg.horizon,
                               walk_stream_seed(cfg.master_seed, w));
    RenewalScan cone = cone_renewal_scan(traj, frame, cfg.confirm_window);
    RenewalScan slab = slab_renewal_scan(traj, ell, cfg.confirm_window);
    auto& s = stats[w];
    s.n_taus = static_cast<std::int64_t>(cone.taus.size());
    s.n_slab_taus = static_cast<std::int64_t>(slab.taus.size());
    s.censored_tail = cone.censored_tail;
    s.subset_ok = std::includes(slab.taus.begin(), slab.taus.end(), cone.taus.begin(),
                                cone.taus.end());
    s.diag = cone_diagnostics(traj, frame);
    s.blocks = extract_blocks(cone, traj);
  });

  BlockSample sample;
  sample.n_walks = cfg.n_walks;
  sample.horizon = cfg.horizon;
  sample.confirm_window = cfg.confirm_window;
  if (frame.exact) sample.ell_int = frame.exact->ell_int;
  std::int64_t total_taus = 0, censored_tails = 0, subset_violations = 0, settled = 0;
  double alpha1_sum = 0;
  std::vector<std::int64_t> dtau_values;
  for (std::int64_t w = 0; w < cfg.n_walks; ++w) {
    auto& s = stats[w];
    total_taus += s.n_taus;
    censored_tails += s.censored_tail ? 1 : 0;
    subset_violations += s.subset_ok ? 0 : 1;
    if (!s.diag.censored) {
      ++settled;
      alpha1_sum += s.diag.alpha1;
    }
    for (auto& b : s.blocks) {
      dtau_values.push_back(b.dtau);
      sample.items.push_back({w, std::move(b)});
    }
  }

  json diag = {
      {"n_settled", settled},
      {"n_censored", cfg.n_walks - settled},
      {"alpha1_mean", settled > 0 ? alpha1_sum / static_cast<double>(settled) : 0.0},
  };
  json results = {
      {"n_blocks", sample.items.size()},
      {"n_taus_total", total_taus},
      {"censored_tail_fraction",
       static_cast<double>(censored_tails) / static_cast<double>(cfg.n_walks)},
      {"slab_subset_violations", subset_violations},
      {"cone_settling", diag},
  };
  if (!sample.items.empty()) {
    double mean_dtau = 0;
    for (auto v : dtau_values) mean_dtau += static_cast<double>(v);
    mean_dtau /= static_cast<double>(dtau_values.size());
    results["mean_dtau"] = mean_dtau;
  }
  art.summary["results"] = results;
  art.write("blocks.csv", blocks_csv(sample, cfg.spec.d));
  art.write_plot("plot_dtau_hist.txt", "dtau", "count", int_histogram(std::move(dtau_values)));
}

void run_identity_check(const ExperimentConfig& cfg, unsigned threads, Artifacts& art,
                        const RunOptions& options) {
  std::string notice;
  std::vector<Rat64> ell = integer_ell(cfg, &notice);
  if (!notice.empty() && !options.quiet) std::cerr << "notice: " << notice << "\n";
  ConeFrame frame = cone_frame(ell, cfg.alpha);
  BlockSample sample = collect_blocks(cfg.spec, frame, cfg.n_walks, cfg.horizon,
                                      cfg.confirm_window, cfg.master_seed, threads, 0);
  SurvivalResult survival =
      estimate_cone_survival(cfg.spec, frame, cfg.n_walks, cfg.horizon, {cfg.horizon},
                             cfg.master_seed, threads, cfg.n_walks);
  IdentityResult res = renewal_identity_from_sample(sample, survival.final_survival);
  art.summary["results"] = {
      {"product", estimate_json(res.product)},
      {"target", 1.0},
      {"step_mean", estimate_json(res.step_mean)},
      {"survival", estimate_json(res.survival)},
      {"n_blocks", res.n_blocks},
  };
  if (!notice.empty()) art.summary["results"]["notice"] = notice;
  art.write("blocks.csv", blocks_csv(sample, cfg.spec.d));

  std::vector<std::int64_t> projections;
  projections.reserve(sample.items.size());
  for (const auto& item : sample.items) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < sample.ell_int.size(); ++i)
      s += item.block.dx[i] * sample.ell_int[i];
    projections.push_back(s);
  }
  art.write_plot("plot_step_hist.txt", "dx_proj", "count",
                 int_histogram(std::move(projections)));
}

void run_decay_check(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  ConeFrame frame = cone_frame(effective_ell(cfg), cfg.alpha);
  DecayResult res = geometric_decay_check(cfg.spec, frame, cfg.n_walks, cfg.horizon, cfg.k_max,
                                          cfg.master_seed, threads);
  json pk = json::array();
  std::vector<std::pair<double, double>> plot;
  for (std::size_t k = 0; k < res.p_k.size(); ++k) {
    pk.push_back({{"k", k}, {"p_finite", res.p_k[k]}, {"count", res.finite_counts[k]}});
    if (res.p_k[k] > 0) plot.emplace_back(static_cast<double>(k), std::log(res.p_k[k]));
  }
  art.summary["results"] = {
      {"p_k", pk},
      {"degenerate", res.degenerate},
      {"q_direct", estimate_json(res.q_direct)},
  };
  if (!res.degenerate) {
    art.summary["results"]["fit"] = {
        {"slope", res.fit.slope},
        {"intercept", res.fit.intercept},
        {"r2", res.fit.r2},
        {"slope_stderr", res.fit.slope_stderr},
        {"log_q_direct", std::log(res.q_direct.value)},
        {"slope_vs_logq_se", res.slope_vs_logq_se},
    };
  }
  art.write_plot("plot_decay.txt", "k", "log_p_finite", plot);
}

void run_direction(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  ConeFrame frame = cone_frame(effective_ell(cfg), cfg.alpha);
  BlockSample sample = collect_blocks(cfg.spec, frame, cfg.n_walks, cfg.horizon,
                                      cfg.confirm_window, cfg.master_seed, threads);
  DirectionResult res = estimate_direction(sample, cfg.master_seed);
  json r = {
      {"defined", res.defined},
      {"n_blocks", res.n_blocks},
      {"mean_dx", res.mean_dx},
      {"mean_dx_stderr", res.mean_dx_stderr},
  };
  if (res.defined) {
    r["nu"] = res.nu;
    r["angular_stderr"] = res.angular_stderr;
  } else {
    r["note"] = "direction undefined: |mean dx| within 3 SE of zero";
  }
  art.summary["results"] = r;
  art.write("blocks.csv", blocks_csv(sample, cfg.spec.d));

  std::vector<std::int64_t> dtaus;
  for (const auto& item : sample.items) dtaus.push_back(item.block.dtau);
  art.write_plot("plot_dtau_hist.txt", "dtau", "count", int_histogram(std::move(dtaus)));
}

void run_velocity(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  ConeFrame frame = cone_frame(effective_ell(cfg), cfg.alpha);
  BlockSample sample = collect_blocks(cfg.spec, frame, cfg.n_walks, cfg.horizon,
                                      cfg.confirm_window, cfg.master_seed, threads);
  VelocityResult res = estimate_velocity(sample);
  art.summary["results"] = {
      {"mu", res.mu},
      {"mu_stderr", res.stderrr},
      {"mean_dtau", res.mean_dtau},
      {"n_blocks", res.n_blocks},
  };
  art.write("blocks.csv", blocks_csv(sample, cfg.spec.d));

  std::vector<std::int64_t> dtaus;
  for (const auto& item : sample.items) dtaus.push_back(item.block.dtau);
  art.write_plot("plot_dtau_hist.txt", "dtau", "count", int_histogram(std::move(dtaus)));
}

void run_iid_test(const ExperimentConfig& cfg, unsigned threads, Artifacts& art,
                  const RunOptions& options) {
  std::string notice;
  std::vector<Rat64> ell = integer_ell(cfg, &notice);
  if (!notice.empty() && !options.quiet) std::cerr << "notice: " << notice << "\n";
  ConeFrame frame = cone_frame(ell, cfg.alpha);
  BlockSample sample = collect_blocks(cfg.spec, frame, cfg.n_walks, cfg.horizon,
                                      cfg.confirm_window, cfg.master_seed, threads);
  IidResult res = iid_blocks_test(sample);
  art.summary["results"] = {
      {"ks_d", res.ks.d},
      {"ks_pvalue", res.ks.pvalue},
      {"lag1_autocorr", res.autocorr},
      {"autocorr_bound", res.autocorr_bound},
      {"n_pairs", res.n_pairs},
      {"degenerate", res.degenerate},
      {"pass", res.pass},
  };
  art.write("blocks.csv", blocks_csv(sample, cfg.spec.d));

  // One ECDF per parity class; the KS statistic compares these two curves.
  std::vector<double> even, odd;
  for (const auto& item : sample.items) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < sample.ell_int.size(); ++i)
      s += item.block.dx[i] * sample.ell_int[i];
    (item.block.k % 2 == 0 ? even : odd).push_back(static_cast<double>(s));
  }
  art.write_plot("plot_even_ecdf.txt", "dx_proj", "ecdf", ecdf_points(std::move(even)));
  art.write_plot("plot_odd_ecdf.txt", "dx_proj", "ecdf", ecdf_points(std::move(odd)));
}

void run_neighborhood(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  double radius = cfg.mode == "halfcircle" ? 90.0 : cfg.radius_deg;
  double min_dot = cfg.min_dot_set ? cfg.min_dot : (cfg.mode == "halfcircle" ? 0.2 : -2.0);
  TransienceOptions opts;
  opts.threshold_exponent = cfg.threshold_exponent;
  opts.level_fraction = cfg.level_fraction;
  opts.verdict_threshold = cfg.verdict_threshold;
  NeighborhoodResult res =
      neighborhood_scan(cfg.spec, ell_doubles(effective_ell(cfg)), radius, cfg.grid_count,
                        min_dot, cfg.n_walks, cfg.horizon, cfg.master_seed, threads, opts);

  json dirs = json::array();
  std::vector<std::pair<double, double>> plot;
  std::string csv = "angle_deg,dir_x,dir_y,n_plus,n_minus,n_undecided,label\n";
  for (const auto& v : res.verdicts) {
    dirs.push_back({
        {"angle_deg", v.angle_deg},
        {"direction", v.direction},
        {"n_plus", v.transience.n_plus},
        {"n_minus", v.transience.n_minus},
        {"n_undecided", v.transience.n_undecided},
        {"verdict", label_name(v.transience.verdict.label)},
    });
    double frac = static_cast<double>(v.transience.n_plus) /
                  static_cast<double>(v.transience.n_walks);
    plot.emplace_back(v.angle_deg, frac);
    csv += format_double(v.angle_deg) + "," + format_double(v.direction[0]) + "," +
           format_double(v.direction[1]) + "," + std::to_string(v.transience.n_plus) + "," +
           std::to_string(v.transience.n_minus) + "," +
           std::to_string(v.transience.n_undecided) + "," +
           label_name(v.transience.verdict.label) + "\n";
  }
  art.summary["results"] = {
      {"mode", cfg.mode},
      {"min_dot", min_dot},
      {"all_transient_plus", res.all_transient_plus},
      {"directions", dirs},
  };
  art.write("directions.csv", csv);
  art.write_plot("plot_neighborhood.txt", "angle_deg", "fraction_plus", plot);
}

void run_cluster(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  auto endpoints = collect_endpoints(cfg.spec, cfg.n_walks, cfg.horizon, cfg.master_seed,
                                     threads);
  std::vector<std::vector<double>> unit;
  std::string csv = "walk_index";
  for (int i = 1; i <= cfg.spec.d; ++i) csv += ",x_" + std::to_string(i);
  csv += "\n";
  for (std::size_t w = 0; w < endpoints.size(); ++w) {
    csv += std::to_string(w);
    for (auto v : endpoints[w]) csv += "," + std::to_string(v);
    csv += "\n";
    std::vector<double> p(endpoints[w].begin(), endpoints[w].end());
    unit.push_back(std::move(p));
  }
  art.write("endpoints.csv", csv);

  ClusterResult res = direction_cluster_analysis(unit, cfg.cluster_threshold_deg,
                                                 cfg.antipodal_tol_deg, cfg.major_mass_fraction);
  json clusters = json::array();
  for (const auto& c : res.clusters)
    clusters.push_back({{"center", c.center}, {"mass", c.mass}});
  std::string note;
  if (res.n_major == 0)
    note = "no asymptotic direction";
  else if (res.violation)
    note = "red-alert: more than two major clusters; isotropic spread also "
           "produces this at desk scale, inspect the masses";
  else if (res.n_major == 2 && res.antipodal)
    note = "two antipodal directions";
  art.summary["results"] = {
      {"n_points", res.n_points},
      {"n_clusters", clusters.size()},
      {"n_major", res.n_major},
      {"antipodal", res.antipodal},
      {"violation_more_than_two_major", res.violation},
      {"clusters", clusters},
      {"note", note},
  };

  if (cfg.spec.d == 2) {
    std::vector<std::int64_t> angles;
    for (const auto& e : endpoints) {
      if (e[0] == 0 && e[1] == 0) continue;
      double a = std::atan2(static_cast<double>(e[1]), static_cast<double>(e[0]));
      angles.push_back(std::llround(a * 180.0 / 3.14159265358979323846));
    }
    art.write_plot("plot_angle_hist.txt", "angle_deg", "count",
                   int_histogram(std::move(angles)));
  }
}

void run_oneD_compare(const ExperimentConfig& cfg, unsigned threads, Artifacts& art) {
  OneDVerdict oracle = oneD_classify(cfg.spec);

  const std::int64_t level =
      std::max<std::int64_t>(8, std::llround(std::pow(static_cast<double>(cfg.horizon),
                                                      cfg.exit_exponent)));
  std::vector<int> side(cfg.n_walks, 0);  // +1 / -1 / 0 censored
  std::vector<double> endpoint(cfg.n_walks, 0.0);
  parallel_for(static_cast<std::size_t>(cfg.n_walks), threads, [&](std::size_t w) {
    Environment env(cfg.spec, walk_env_seed(cfg.master_seed, w));
    Trajectory traj = simulate(env, {0}, cfg.horizon, walk_stream_seed(cfg.master_seed, w));
    int s = 0;
    traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
      if (s == 0 && n > 0 && (x[0] >= level || x[0] <= -level)) s = x[0] > 0 ? +1 : -1;
      if (n == traj.horizon()) endpoint[w] = static_cast<double>(x[0]);
    });
    side[w] = s;
  });

  std::int64_t plus = 0, minus = 0, censored = 0;
  for (int s : side) {
    if (s > 0) ++plus;
    else if (s < 0) ++minus;
    else ++censored;
  }
  double frac_plus = static_cast<double>(plus) / static_cast<double>(cfg.n_walks);
  double frac_minus = static_cast<double>(minus) / static_cast<double>(cfg.n_walks);
  // Verdict from the exit-side share among decided walks: a symmetric walk
  // splits near 1/2 by symmetry while a transient one pushes the share
  // toward 1, independently of how many slow walks were censored.
  std::int64_t decided = plus + minus;
  double decided_frac = static_cast<double>(decided) / static_cast<double>(cfg.n_walks);
  double share_plus = decided > 0 ? static_cast<double>(plus) / static_cast<double>(decided) : 0.5;
  TransienceVerdict::Label mc_label = TransienceVerdict::Label::kUndecided;
  if (decided_frac >= 0.5) {
    if (share_plus >= cfg.exit_fraction) mc_label = TransienceVerdict::Label::kTransientPlus;
    else if (1.0 - share_plus >= cfg.exit_fraction)
      mc_label = TransienceVerdict::Label::kTransientMinus;
  }

  // Block velocity from the renewal scan; d = 1 has no transverse cone
  // constraints, so records confirm whenever a full window remains.
  ConeFrame frame = cone_frame(std::vector<Rat64>{Rat64(1)}, cfg.alpha);
  BlockSample sample = collect_blocks(cfg.spec, frame, cfg.n_walks, cfg.horizon,
                                      cfg.confirm_window, cfg.master_seed, threads);
  std::optional<VelocityResult> velocity;
  if (sample.items.size() >= 100) velocity = estimate_velocity(sample);

  ScalarEstimate endpoint_speed = mean_estimate(endpoint);
  endpoint_speed.value /= static_cast<double>(cfg.horizon);
  endpoint_speed.stderrr /= static_cast<double>(cfg.horizon);
  endpoint_speed.ci_lo /= static_cast<double>(cfg.horizon);
  endpoint_speed.ci_hi /= static_cast<double>(cfg.horizon);

  std::string oracle_label;
  switch (oracle.classification) {
    case OneDClass::kTransientPlus: oracle_label = "transient+"; break;
    case OneDClass::kTransientMinus: oracle_label = "transient-"; break;
    case OneDClass::kRecurrent: oracle_label = "recurrent"; break;
  }
  // A recurrent walk cannot be certified at finite horizon; the consistent
  // Monte Carlo outcome for it is "undecided".
  bool consistent =
      (oracle.classification == OneDClass::kTransientPlus &&
       mc_label == TransienceVerdict::Label::kTransientPlus) ||
      (oracle.classification == OneDClass::kTransientMinus &&
       mc_label == TransienceVerdict::Label::kTransientMinus) ||
      (oracle.classification == OneDClass::kRecurrent &&
       mc_label == TransienceVerdict::Label::kUndecided);

  json mc = {
      {"exit_level", level},
      {"fraction_plus", frac_plus},
      {"fraction_minus", frac_minus},
      {"share_plus_decided", share_plus},
      {"decided_fraction", decided_frac},
      {"n_censored", censored},
      {"verdict", label_name(mc_label)},
      {"endpoint_speed", estimate_json(endpoint_speed)},
  };
  if (velocity) {
    mc["block_speed"] = velocity->mu[0];
    mc["block_speed_stderr"] = velocity->stderrr[0];
    mc["n_blocks"] = velocity->n_blocks;
  }
  art.summary["results"] = {
      {"oracle",
       {{"classification", oracle_label},
        {"e_log_rho", oracle.e_log_rho},
        {"e_rho", oracle.e_rho},
        {"e_inv_rho", oracle.e_inv_rho},
        {"speed", oracle.speed}}},
      {"monte_carlo", mc},
      {"consistent", consistent},
  };

  std::string csv = "walk_index,endpoint,exit_side\n";
  for (std::int64_t w = 0; w < cfg.n_walks; ++w)
    csv += std::to_string(w) + "," + format_double(endpoint[w]) + "," +
           std::to_string(side[w]) + "\n";
  art.write("walks.csv", csv);
  art.write_plot("plot_endpoint_ecdf.txt", "endpoint", "ecdf", ecdf_points(endpoint));
}

void run_trace(const ExperimentConfig& cfg, Artifacts& art) {
  Environment env(cfg.spec, walk_env_seed(cfg.master_seed, cfg.walk_index));
  std::vector<std::int64_t> start =
      cfg.start.empty() ? std::vector<std::int64_t>(cfg.spec.d, 0) : cfg.start;
  Trajectory traj =
      simulate(env, start, cfg.horizon, walk_stream_seed(cfg.master_seed, cfg.walk_index));
  std::ostringstream os;
  write_trace(traj, os);
  art.write("trace.txt", os.str());
  art.summary["results"] = {
      {"walk_index", cfg.walk_index},
      {"horizon", cfg.horizon},
      {"file", "trace.txt"},
  };
}

}  // namespace

int run_experiment(ExperimentConfig config, const RunOptions& options) {
  if (options.seed_override) config.master_seed = *options.seed_override;
  if (options.out_dir) config.out_dir = *options.out_dir;
  validate_config(config);

  Artifacts art;
  art.dir = config.out_dir;
  art.master_seed = config.master_seed;
  EllipticityReport ellipticity = validate_strict_ellipticity(config.spec);

  art.summary["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  art.summary["experiment"] = kind_name(config.kind);
  art.summary["master_seed"] = config.master_seed;
  art.summary["strict_ellipticity"] = ellipticity.holds;
  if (!ellipticity.holds) art.summary["ellipticity_witness"] = ellipticity.witness;
  json echo = json::object();
  for (const auto& [k, v] : config.echo) echo[k] = v;
  echo["effective.master_seed"] = config.master_seed;
  echo["effective.horizon"] = config.horizon;
  echo["effective.n_walks"] = config.n_walks;
  echo["effective.confirm_window"] = config.confirm_window;
  art.summary["config"] = echo;

  try {
    switch (config.kind) {
      case ExperimentKind::kTransienceScan: run_transience(config, options.threads, art); break;
      case ExperimentKind::kConeSurvival: run_cone_survival(config, options.threads, art); break;
      case ExperimentKind::kRenewalStats: run_renewal_stats(config, options.threads, art); break;
      case ExperimentKind::kIdentityCheck:
        run_identity_check(config, options.threads, art, options);
        break;
      case ExperimentKind::kDecayCheck: run_decay_check(config, options.threads, art); break;
      case ExperimentKind::kDirection: run_direction(config, options.threads, art); break;
      case ExperimentKind::kVelocity: run_velocity(config, options.threads, art); break;
      case ExperimentKind::kIidTest: run_iid_test(config, options.threads, art, options); break;
      case ExperimentKind::kNeighborhood: run_neighborhood(config, options.threads, art); break;
      case ExperimentKind::kCluster: run_cluster(config, options.threads, art); break;
      case ExperimentKind::kOneDCompare: run_oneD_compare(config, options.threads, art); break;
      case ExperimentKind::kTrace: run_trace(config, art); break;
    }
  } catch (const InsufficientDataError& e) {
    if (!options.quiet) std::cerr << "insufficient data: " << e.what() << "\n";
    art.summary["error"] = {{"kind", "insufficient-data"}, {"message", e.what()}};
    art.finish();
    return 2;
  }

  art.finish();
  if (!options.quiet)
    std::cerr << kind_name(config.kind) << ": wrote " << (art.dir / "summary.json").string()
              << "\n";
  return 0;
}

}  // namespace rwre
