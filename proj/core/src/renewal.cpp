#include "rwre/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rwre/detail/exact_compare.hpp"

namespace rwre {

namespace {

using detail::sqrt_scaled_less;

// Next strictly-smaller value to the right, monotonic-stack, O(n) amortized.
// less(a, b) must implement "value at a < value at b".
template <class Less>
std::vector<std::int64_t> next_smaller(std::int64_t count, Less&& less) {
  std::vector<std::int64_t> out(count, count);  // `count` acts as "never"
  std::vector<std::int64_t> stack;
  for (std::int64_t n = count - 1; n >= 0; --n) {
    while (!stack.empty() && !less(stack.back(), n)) stack.pop_back();
    out[n] = stack.empty() ? count : stack.back();
    stack.push_back(n);
  }
  return out;
}

// Projection machinery shared by the cone and slab scans. Exit lookups are
// O(1) after an O(horizon * d) build.
struct ProjectionTable {
  std::int64_t horizon = 0;
  std::vector<double> proj;        // ell.X_n
  std::vector<double> prefix_max;  // max of proj over [0, n]
  std::vector<std::int64_t> records;
  std::vector<std::vector<std::int64_t>> exits;  // per constraint process

  std::int64_t count() const { return horizon + 1; }

  // First time > t at which some constraint drops below its value at t;
  // horizon+1 when none.
  std::int64_t exit_after(std::int64_t t) const {
    std::int64_t e = count();
    for (const auto& ns : exits) e = std::min(e, ns[t]);
    return e;
  }
};

void build_proj_and_records(const Trajectory& traj, std::span<const double> ell,
                            ProjectionTable& table) {
  table.horizon = traj.horizon();
  table.proj.resize(table.count());
  table.prefix_max.resize(table.count());
  {
    double p = 0;
    for (int i = 0; i < traj.d; ++i) p += static_cast<double>(traj.start[i]) * ell[i];
    table.proj[0] = p;
    for (std::int64_t n = 0; n < table.horizon; ++n) {
      int axis = step_axis(traj.steps[n]);
      p += step_sign(traj.steps[n]) * ell[axis];
      table.proj[n + 1] = p;
    }
  }
  table.prefix_max[0] = table.proj[0];
  for (std::int64_t n = 1; n <= table.horizon; ++n) {
    table.prefix_max[n] = std::max(table.prefix_max[n - 1], table.proj[n]);
    if (table.proj[n] > table.prefix_max[n - 1]) table.records.push_back(n);
  }
}

// Whether the exact integer pair representation of the tilted projections
// stays within safe squared magnitudes for this trajectory.
bool exact_scan_safe(const Trajectory& traj, const ConeFrame::Exact& ex) {
  long double span = static_cast<long double>(traj.horizon()) + 1;
  long double max_s = 0, max_f = 0;
  for (std::size_t i = 0; i < ex.ell_int.size(); ++i)
    max_s += std::abs(static_cast<long double>(ex.ell_int[i])) *
             (span + std::abs(static_cast<long double>(traj.start[i])));
  for (const auto& f : ex.f) {
    long double sum = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
      sum += std::abs(static_cast<long double>(f[i])) *
             (span + std::abs(static_cast<long double>(traj.start[i])));
    max_f = std::max(max_f, sum);
  }
  long double max_a = 2.0L * ex.alpha_den * max_s;
  long double max_b = 2.0L * ex.alpha_num * max_f;
  long double max_f2 = 0;
  for (auto f2 : ex.f_norm2) max_f2 = std::max(max_f2, static_cast<long double>(f2));
  const long double lim = 1e37L;
  return max_a * max_a * max_f2 < lim && max_b * max_b < lim &&
         max_a < 9e18L && max_b < 9e18L;
}

void build_cone_exits(const Trajectory& traj, const ConeFrame& frame, ProjectionTable& table) {
  const std::int64_t count = table.count();
  if (frame.d == 1) return;  // no transverse constraints; the cone never exits

  if (frame.exact && exact_scan_safe(traj, *frame.exact)) {
    const auto& ex = *frame.exact;
    std::vector<std::int64_t> a(count);  // q * ell.X_n
    std::vector<std::int64_t> t(count);  // p * f_i.X_n
    {
      std::int64_t s = 0;
      for (int i = 0; i < traj.d; ++i) s += traj.start[i] * ex.ell_int[i];
      a[0] = ex.alpha_den * s;
      for (std::int64_t n = 0; n < table.horizon; ++n) {
        int axis = step_axis(traj.steps[n]);
        s += step_sign(traj.steps[n]) * ex.ell_int[axis];
        a[n + 1] = ex.alpha_den * s;
      }
    }
    for (std::size_t i = 0; i < ex.f.size(); ++i) {
      std::int64_t v = 0;
      for (int j = 0; j < traj.d; ++j) v += traj.start[j] * ex.f[i][j];
      t[0] = ex.alpha_num * v;
      for (std::int64_t n = 0; n < table.horizon; ++n) {
        int axis = step_axis(traj.steps[n]);
        v += step_sign(traj.steps[n]) * ex.f[i][axis];
        t[n + 1] = ex.alpha_num * v;
      }
      const std::int64_t f2 = ex.f_norm2[i];
      // value = a*sqrt(F) + t  and  value = a*sqrt(F) - t
      table.exits.push_back(next_smaller(count, [&](std::int64_t m, std::int64_t n) {
        return sqrt_scaled_less(a[m] - a[n], t[n] - t[m], f2);
      }));
      table.exits.push_back(next_smaller(count, [&](std::int64_t m, std::int64_t n) {
        return sqrt_scaled_less(a[m] - a[n], t[m] - t[n], f2);
      }));
    }
    return;
  }

  std::vector<double> y(count);
  for (const auto& tilt : frame.tilted) {
    double v = 0;
    for (int i = 0; i < traj.d; ++i) v += static_cast<double>(traj.start[i]) * tilt[i];
    y[0] = v;
    for (std::int64_t n = 0; n < table.horizon; ++n) {
      int axis = step_axis(traj.steps[n]);
      v += step_sign(traj.steps[n]) * tilt[axis];
      y[n + 1] = v;
    }
    table.exits.push_back(
        next_smaller(count, [&](std::int64_t m, std::int64_t n) { return y[m] < y[n]; }));
  }
}

RenewalScan run_scan(const Trajectory& traj, const ProjectionTable& table,
                     std::int64_t confirm_window) {
  if (confirm_window < 1) throw std::invalid_argument("confirm window must be >= 1");
  if (traj.horizon() < confirm_window)
    throw std::invalid_argument("trajectory shorter than the confirm window");

  RenewalScan scan;
  scan.confirm_window = confirm_window;
  const std::int64_t horizon = table.horizon;
  const std::int64_t never = table.count();

  // Literal attempt sequence: anchors are record times; after a finite exit
  // the next anchor is the first record past it.
  std::size_t ri = 0;
  while (ri < table.records.size()) {
    std::int64_t s = table.records[ri];
    std::int64_t e = table.exit_after(s);
    if (e < never) {
      scan.attempts.push_back({s, StoppingResult::at(e), table.prefix_max[e]});
      while (ri < table.records.size() && table.records[ri] <= e) ++ri;
    } else {
      scan.attempts.push_back({s, StoppingResult::censored(), table.prefix_max[horizon]});
      break;
    }
  }

  // Confirm-window rule over the literal list.
  for (std::size_t k = 0; k < scan.attempts.size(); ++k) {
    const Attempt& at = scan.attempts[k];
    bool window_fits = at.s + confirm_window <= horizon;
    bool survives = !at.r.hit || (window_fits && at.r.t > at.s + confirm_window);
    if (!at.r.hit && !window_fits) break;  // censored tail; flagged below
    if (survives && window_fits) {
      scan.k_confirmed = k;
      break;
    }
  }

  // Confirmed renewal times: records with a full surviving window. Records
  // skipped by the attempt recursion fail this test automatically, so the
  // direct enumeration and the restarted recursion agree.
  for (std::int64_t t : table.records) {
    std::int64_t e = table.exit_after(t);
    if (t + confirm_window <= horizon) {
      if (e > t + confirm_window) scan.taus.push_back(t);
    } else if (e == never) {
      scan.censored_tail = true;
    }
  }
  return scan;
}

}  // namespace

RenewalScan cone_renewal_scan(const Trajectory& traj, const ConeFrame& frame,
                              std::int64_t confirm_window) {
  if (frame.d != traj.d) throw std::invalid_argument("frame/trajectory dimension mismatch");
  ProjectionTable table;
  build_proj_and_records(traj, frame.ell, table);
  build_cone_exits(traj, frame, table);
  return run_scan(traj, table, confirm_window);
}

RenewalScan slab_renewal_scan(const Trajectory& traj, std::span<const double> ell,
                              std::int64_t confirm_window) {
  if (static_cast<int>(ell.size()) != traj.d)
    throw std::invalid_argument("direction/trajectory dimension mismatch");
  ProjectionTable table;
  build_proj_and_records(traj, ell, table);
  const auto& proj = table.proj;
  table.exits.push_back(next_smaller(
      table.count(), [&](std::int64_t m, std::int64_t n) { return proj[m] < proj[n]; }));
  return run_scan(traj, table, confirm_window);
}

std::vector<Block> extract_blocks(const RenewalScan& scan, const Trajectory& traj) {
  std::vector<Block> blocks;
  if (scan.taus.size() < 2) return blocks;
  blocks.reserve(scan.taus.size() - 1);

  std::size_t next = 0;
  std::vector<std::int64_t> anchor;
  Block* open = nullptr;
  traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    if (open) {
      double norm2 = 0;
      for (int i = 0; i < traj.d; ++i) {
        double delta = static_cast<double>(x[i] - anchor[i]);
        norm2 += delta * delta;
      }
      open->sup_norm = std::max(open->sup_norm, std::sqrt(norm2));
      if (n == scan.taus[next]) {
        open->dtau = n - (scan.taus[next - 1]);
        open->dx.resize(traj.d);
        for (int i = 0; i < traj.d; ++i) open->dx[i] = x[i] - anchor[i];
        open = nullptr;
      }
    }
    if (!open && next + 1 < scan.taus.size() && n == scan.taus[next]) {
      blocks.push_back(Block{static_cast<std::int64_t>(next + 1), 0, {}, 0});
      open = &blocks.back();
      anchor.assign(x.begin(), x.end());
      ++next;
    }
  });
  if (open) blocks.pop_back();  // should not happen; taus lie within the horizon
  return blocks;
}

ConeDiagnostics cone_diagnostics(const Trajectory& traj, const ConeFrame& frame) {
  ConeDiagnostics diag;
  const std::int64_t horizon = traj.horizon();
  if (horizon < 1) return diag;

  std::vector<char> inside(horizon + 1, 1);
  traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    if (n >= 1) inside[n] = in_cone(x, frame) ? 1 : 0;
  });
  std::int64_t last_fail = 0;
  for (std::int64_t n = horizon; n >= 1; --n) {
    if (!inside[n]) {
      last_fail = n;
      break;
    }
  }
  if (last_fail == horizon) return diag;  // never settles before the horizon

  diag.censored = false;
  diag.settle_index = last_fail + 1;
  double c_min = std::numeric_limits<double>::infinity();
  double m_max = 0;
  traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    if (n < 1 || n > diag.settle_index) return;
    double p = 0;
    for (int i = 0; i < traj.d; ++i) p += static_cast<double>(x[i]) * frame.ell[i];
    c_min = std::min(c_min, p);
    double sum = 0;
    for (const auto& e : frame.basis) {
      double t = 0;
      for (int i = 0; i < traj.d; ++i) t += static_cast<double>(x[i]) * e[i];
      sum += t * t;
    }
    m_max = std::max(m_max, sum);
  });
  diag.c_min = c_min;
  diag.m_sq = m_max;
  diag.alpha1 = m_max == 0 ? frame.alpha : std::min(c_min / std::sqrt(m_max), frame.alpha);
  return diag;
}

}  // namespace rwre
