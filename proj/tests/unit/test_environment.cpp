#include <doctest.h>

#include <cmath>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/parallel.hpp"

using namespace rwre;

namespace {
std::vector<std::int64_t> site(std::initializer_list<std::int64_t> v) { return {v}; }
}

TEST_CASE("factory validation") {
  CHECK_NOTHROW(make_deterministic(2, {0.25, 0.25, 0.25, 0.25}));
  CHECK_THROWS(make_deterministic(2, {0.5, 0.5}));                    // dimension mismatch
  CHECK_THROWS(make_deterministic(1, {1.2, -0.2}));                   // negative entry
  CHECK_THROWS(make_deterministic(1, {0.5, 0.4}));                    // sum != 1
  CHECK_THROWS(make_finite_mixture(1, {{0.6, 0.4}}, {0.5}));          // weights sum
  CHECK_THROWS(make_finite_mixture(1, {{0.6, 0.4}}, {0.5, 0.5}));     // count mismatch
  CHECK_NOTHROW(make_finite_mixture(1, {{0.6, 0.4}, {0.25, 0.75}}, {0.8, 0.2}));
  CHECK_THROWS(make_dirichlet(2, {1, 1, 1, 0}));                      // nonpositive
  CHECK_NOTHROW(make_dirichlet(2, {0.5, 0.5, 0.5, 0.5}));
  CHECK_THROWS(make_drift_perturbed_uniform(2, {0.5, 0, 0, 0}));      // sum != 0
  CHECK_THROWS(make_drift_perturbed_uniform(1, {-0.5, 0.5}));         // entry <= -1/(2d)
  CHECK_NOTHROW(make_drift_perturbed_uniform(2, {0.1, -0.1, 0.0, 0.0}));
}

TEST_CASE("deterministic family ignores site and seed") {
  auto spec = make_deterministic(2, {0.4, 0.1, 0.25, 0.25});
  Environment a(spec, 1), b(spec, 999);
  CHECK(a.site_probs(site({0, 0})) == a.site_probs(site({12, -55})));
  CHECK(a.site_probs(site({3, -7})) == b.site_probs(site({3, -7})));
}

TEST_CASE("site vectors are deterministic in (seed, site)") {
  auto spec = make_dirichlet(2, {1, 1, 1, 1});
  Environment env(spec, 20250809);
  auto v1 = env.site_probs(site({3, -7}));
  auto v2 = env.site_probs(site({3, -7}));
  CHECK(v1 == v2);
  CHECK(env.site_probs(site({3, -7})) != env.site_probs(site({3, -6})));
  Environment other(spec, 20250810);
  CHECK(v1 != other.site_probs(site({3, -7})));
}

TEST_CASE("parallel revisits observe identical vectors") {
  auto spec = make_dirichlet(2, {0.7, 1.3, 2.0, 0.5});
  Environment env(spec, 77);
  auto expected = env.site_probs(site({5, 5}));
  std::vector<std::vector<double>> got(64);
  parallel_for(got.size(), 8, [&](std::size_t i) { got[i] = env.site_probs(site({5, 5})); });
  for (const auto& v : got) CHECK(v == expected);
}

TEST_CASE("simplex closure over random specs and sites") {
  std::vector<DistributionSpec> specs = {
      make_dirichlet(2, {1, 1, 1, 1}),
      make_dirichlet(3, {0.3, 2.0, 1.1, 0.9, 4.0, 0.2}),
      make_finite_mixture(1, {{0.6, 0.4}, {0.25, 0.75}}, {0.8, 0.2}),
      make_drift_perturbed_uniform(2, {0.1, -0.1, 0.05, -0.05}),
  };
  for (const auto& spec : specs) {
    Environment env(spec, 31337);
    for (std::int64_t k = -50; k <= 50; k += 7) {
      std::vector<std::int64_t> x(spec.d, k);
      auto p = env.site_probs(x);
      REQUIRE(static_cast<int>(p.size()) == 2 * spec.d);
      double sum = 0;
      for (double v : p) {
        REQUIRE(v >= 0.0);
        sum += v;
      }
      REQUIRE(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("dirichlet(1,1,1,1) site means match the analytic value") {
  auto spec = make_dirichlet(2, {1, 1, 1, 1});
  Environment env(spec, 424242);
  const int n = 10000;
  std::vector<double> mean(4, 0.0);
  for (int i = 0; i < n; ++i) {
    auto p = env.site_probs(site({i, -i}));
    for (int j = 0; j < 4; ++j) mean[j] += p[j];
  }
  // Dirichlet(1,1,1,1) marginal: mean 1/4, var = 3/(16*5).
  double se = std::sqrt(3.0 / 80.0 / n);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(mean[j] / n - 0.25) < 3 * se);
}

TEST_CASE("neighboring sites decorrelate over fresh seeds") {
  auto spec = make_dirichlet(2, {1, 1, 1, 1});
  const int m = 2000;
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  for (int i = 0; i < m; ++i) {
    Environment env(spec, 1000 + i);
    double a = env.site_probs(site({0, 0}))[0];
    double b = env.site_probs(site({1, 0}))[0];
    sa += a;
    sb += b;
    saa += a * a;
    sbb += b * b;
    sab += a * b;
  }
  double cov = sab / m - (sa / m) * (sb / m);
  double corr = cov / std::sqrt((saa / m - sa / m * sa / m) * (sbb / m - sb / m * sb / m));
  CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("strict ellipticity reports") {
  auto degenerate = make_deterministic(2, {1, 0, 0, 0});
  auto rep = validate_strict_ellipticity(degenerate);
  CHECK_FALSE(rep.holds);
  CHECK(rep.witness.find("entry 1") != std::string::npos);

  CHECK(validate_strict_ellipticity(make_dirichlet(2, {0.5, 0.5, 0.5, 0.5})).holds);

  auto mix = make_finite_mixture(2, {{0.5, 0.5, 0.0, 0.0}, {0.25, 0.25, 0.25, 0.25}},
                                 {0.3, 0.7});
  CHECK_FALSE(validate_strict_ellipticity(mix).holds);

  CHECK(validate_strict_ellipticity(make_drift_perturbed_uniform(2, {0.1, -0.1, 0, 0})).holds);
}
