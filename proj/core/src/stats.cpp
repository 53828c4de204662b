#include "rwre/stats.hpp"

#include <algorithm>
#include <cmath>

namespace rwre {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

ScalarEstimate proportion_estimate(std::int64_t successes, std::int64_t n) {
  if (n <= 0) throw InsufficientDataError("proportion over an empty sample");
  ScalarEstimate est;
  est.n_samples = n;
  double p = static_cast<double>(successes) / static_cast<double>(n);
  est.value = p;
  est.stderrr = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  double z2 = kZ95 * kZ95;
  double nn = static_cast<double>(n);
  double denom = 1.0 + z2 / nn;
  double center = (p + z2 / (2.0 * nn)) / denom;
  double half = kZ95 * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  est.ci_lo = std::max(0.0, center - half);
  est.ci_hi = std::min(1.0, center + half);
  return est;
}

ScalarEstimate mean_estimate(std::span<const double> values) {
  if (values.empty()) throw InsufficientDataError("mean over an empty sample");
  ScalarEstimate est;
  est.n_samples = static_cast<std::int64_t>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  double mean = sum / static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double var = values.size() > 1 ? ss / static_cast<double>(values.size() - 1) : 0.0;
  est.value = mean;
  est.stderrr = std::sqrt(var / static_cast<double>(values.size()));
  est.ci_lo = mean - kZ95 * est.stderrr;
  est.ci_hi = mean + kZ95 * est.stderrr;
  return est;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InsufficientDataError("KS test needs both samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  KsResult res;
  res.n1 = static_cast<std::int64_t>(a.size());
  res.n2 = static_cast<std::int64_t>(b.size());

  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  res.d = d;

  // Asymptotic Kolmogorov distribution with the small-sample correction of
  // Stephens; conservative for discrete data.
  double ne = static_cast<double>(res.n1) * static_cast<double>(res.n2) /
              static_cast<double>(res.n1 + res.n2);
  double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  if (lambda <= 0) {
    res.pvalue = 1.0;
    return res;
  }
  double sum = 0;
  double sign = 1;
  for (int k = 1; k <= 100; ++k) {
    double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
    sign = -sign;
  }
  res.pvalue = std::clamp(2.0 * sum, 0.0, 1.0);
  return res;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b,
                           bool* degenerate) {
  if (a.size() != b.size() || a.size() < 2)
    throw InsufficientDataError("correlation needs paired samples");
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) {
    if (degenerate) *degenerate = true;
    return 0;
  }
  if (degenerate) *degenerate = false;
  return sab / std::sqrt(saa * sbb);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit fit;
  if (x.size() != y.size() || x.size() < 3) {
    fit.degenerate = true;
    return fit;
  }
  double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r2 = 1.0 - ss_res / syy;
  fit.slope_stderr = std::sqrt(ss_res / (n - 2.0) / sxx);
  return fit;
}

}  // namespace rwre
