#include <doctest.h>

#include <cmath>
#include <vector>

#include "rwre/rng.hpp"
#include "rwre/stats.hpp"

using namespace rwre;

TEST_CASE("wilson interval contains the point estimate") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{0, 10}, {10, 10}, {3, 7}, {500, 1000}}) {
    ScalarEstimate e = proportion_estimate(k, n);
    double p = static_cast<double>(k) / n;
    CHECK(e.value == doctest::Approx(p));
    CHECK(e.ci_lo <= e.value + 1e-12);
    CHECK(e.ci_hi >= e.value - 1e-12);
    CHECK(e.ci_lo >= 0.0);
    CHECK(e.ci_hi <= 1.0);
  }
  CHECK(proportion_estimate(10, 10).stderrr == 0.0);
  CHECK_THROWS_AS(proportion_estimate(0, 0), InsufficientDataError);
}

TEST_CASE("mean estimate") {
  std::vector<double> vals{1, 2, 3, 4, 5};
  ScalarEstimate e = mean_estimate(vals);
  CHECK(e.value == doctest::Approx(3.0));
  // sd = sqrt(2.5), se = sd/sqrt(5)
  CHECK(e.stderrr == doctest::Approx(std::sqrt(2.5 / 5.0)));
  std::vector<double> constant{2, 2, 2};
  CHECK(mean_estimate(constant).stderrr == 0.0);
}

TEST_CASE("two-sample KS separates shifted samples and accepts equal laws") {
  std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  KsResult sep = ks_two_sample(a, b);
  CHECK(sep.d == doctest::Approx(1.0));

  rng::Stream s(rng::derive_key(3, rng::Domain::kBootstrap));
  std::vector<double> x, y, z;
  for (int i = 0; i < 600; ++i) {
    x.push_back(s.next_normal());
    y.push_back(s.next_normal());
    z.push_back(s.next_normal() + 1.0);
  }
  CHECK(ks_two_sample(x, y).pvalue > 0.01);
  CHECK(ks_two_sample(x, z).pvalue < 1e-6);
}

TEST_CASE("pearson correlation") {
  std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1}, k{5, 5, 5, 5};
  bool degenerate = false;
  CHECK(pearson_correlation(a, b, &degenerate) == doctest::Approx(1.0));
  CHECK_FALSE(degenerate);
  CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
  CHECK(pearson_correlation(a, k, &degenerate) == 0.0);
  CHECK(degenerate);
}

TEST_CASE("line fit recovers an exact line") {
  std::vector<double> x{0, 1, 2, 3, 4}, y;
  for (double v : x) y.push_back(2.0 * v + 1.0);
  LineFit fit = fit_line(x, y);
  CHECK_FALSE(fit.degenerate);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.slope_stderr == doctest::Approx(0.0).epsilon(1e-9));

  std::vector<double> flat{1, 1, 1, 1, 1};
  CHECK(fit_line(x, flat).degenerate);
  CHECK(fit_line(std::vector<double>{1, 2}, std::vector<double>{1, 2}).degenerate);
}
