#include <doctest.h>

#include <cmath>
#include <set>

#include "rwre/rng.hpp"

using namespace rwre;

TEST_CASE("keyed stream values are pure functions of key and counter") {
  std::uint64_t key = rng::derive_key(42, rng::Domain::kWalkStep);
  CHECK(rng::at(key, 0) == rng::at(key, 0));
  CHECK(rng::at(key, 0) != rng::at(key, 1));
  CHECK(rng::at(key, 7) == rng::at(key, 7));

  rng::Stream a(key), b(key);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("domain tags and payloads separate streams") {
  std::set<std::uint64_t> keys;
  keys.insert(rng::derive_key(1, rng::Domain::kWalkStep));
  keys.insert(rng::derive_key(1, rng::Domain::kEnvironmentSite));
  keys.insert(rng::derive_key(1, rng::Domain::kWalkSeed));
  keys.insert(rng::derive_key(1, rng::Domain::kWalkStep, {0}));
  keys.insert(rng::derive_key(1, rng::Domain::kWalkStep, {1}));
  keys.insert(rng::derive_key(1, rng::Domain::kWalkStep, {0, 0}));
  keys.insert(rng::derive_key(2, rng::Domain::kWalkStep));
  CHECK(keys.size() == 7);
}

TEST_CASE("unit draws land in [0,1) and look uniform") {
  rng::Stream s(rng::derive_key(7, rng::Domain::kWalkStep));
  const int n = 20000;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    double u = s.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  double se = 1.0 / std::sqrt(12.0 * n);
  CHECK(std::abs(sum / n - 0.5) < 3 * se);
}

TEST_CASE("normal moments") {
  rng::Stream s(rng::derive_key(11, rng::Domain::kWalkStep));
  const int n = 20000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    double z = s.next_normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sq / n - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("gamma moments for shapes on both sides of 1") {
  for (double shape : {0.5, 2.5}) {
    rng::Stream s(rng::derive_key(13, rng::Domain::kWalkStep, {static_cast<std::uint64_t>(shape * 2)}));
    const int n = 40000;
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += s.next_gamma(shape);
    double se = std::sqrt(shape / n);  // Var(Gamma(a,1)) = a
    CHECK(std::abs(sum / n - shape) < 4 * se);
  }
}
