#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rwre {

// Raised when an estimator has too little data to say anything; the harness
// maps it to its own exit code.
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScalarEstimate {
  double value = 0;
  double stderrr = 0;  // one extra r dodges the stderr macro from <cstdio>
  double ci_lo = 0;
  double ci_hi = 0;
  std::int64_t n_samples = 0;
  std::int64_t n_censored = 0;
};

// Wilson 95% score interval for a binomial proportion.
ScalarEstimate proportion_estimate(std::int64_t successes, std::int64_t n);

// Sample mean with standard error and normal 95% interval.
ScalarEstimate mean_estimate(std::span<const double> values);

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
struct KsResult {
  double d = 0;
  double pvalue = 1;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Pearson correlation of paired samples; returns 0 with *degenerate=true
// when either margin has zero variance.
double pearson_correlation(std::span<const double> a, std::span<const double> b,
                           bool* degenerate = nullptr);

// Ordinary least squares y = intercept + slope*x.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  double slope_stderr = 0;
  bool degenerate = false;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace rwre
