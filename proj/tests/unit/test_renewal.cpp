#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rwre/renewal.hpp"
#include "rwre/rng.hpp"

using namespace rwre;

namespace {

Trajectory hand_traj(int d, std::vector<std::uint8_t> codes) {
  Trajectory t;
  t.d = d;
  t.start.assign(d, 0);
  t.steps = std::move(codes);
  return t;
}

Trajectory straight_line(int d, std::int64_t horizon) {
  return hand_traj(d, std::vector<std::uint8_t>(horizon, 0));
}

// Lazy random walk on Z^2 with a tunable right bias, for property tests.
Trajectory random_traj(std::int64_t horizon, std::uint64_t seed, double bias) {
  rng::Stream s(rng::derive_key(seed, rng::Domain::kWalkStep));
  std::vector<std::uint8_t> codes;
  std::vector<double> probs{0.25 + bias, 0.25 - bias, 0.25, 0.25};
  for (std::int64_t n = 0; n < horizon; ++n) {
    double u = s.next_unit();
    double acc = 0;
    std::uint8_t code = 3;
    for (std::uint8_t j = 0; j < 4; ++j) {
      acc += probs[j];
      if (u < acc) {
        code = j;
        break;
      }
    }
    codes.push_back(code);
  }
  return hand_traj(2, std::move(codes));
}

ConeFrame frame_e1(std::int64_t a_num, std::int64_t a_den) {
  return cone_frame({Rat64(1), Rat64(0)}, Rat64(a_num, a_den));
}

}  // namespace

TEST_CASE("straight line: every time is a renewal") {
  const std::int64_t h = 40, w = 10;
  Trajectory line = straight_line(2, h);
  ConeFrame frame = frame_e1(1, 1);
  RenewalScan scan = cone_renewal_scan(line, frame, w);

  REQUIRE(scan.attempts.size() == 1);
  CHECK(scan.attempts[0].s == 1);
  CHECK_FALSE(scan.attempts[0].r.hit);
  REQUIRE(scan.k_confirmed.has_value());
  CHECK(*scan.k_confirmed == 0);
  REQUIRE_FALSE(scan.taus.empty());
  CHECK(scan.taus.front() == 1);
  CHECK(static_cast<std::int64_t>(scan.taus.size()) == h - w);
  for (std::size_t i = 0; i < scan.taus.size(); ++i)
    CHECK(scan.taus[i] == static_cast<std::int64_t>(i) + 1);
  CHECK(scan.censored_tail);  // the record at h-w+1 has no room left

  auto blocks = extract_blocks(scan, line);
  REQUIRE(blocks.size() == scan.taus.size() - 1);
  for (const auto& b : blocks) {
    CHECK(b.dtau == 1);
    CHECK(b.dx == std::vector<std::int64_t>{1, 0});
    CHECK(b.sup_norm == doctest::Approx(1.0));
  }
  CHECK(blocks.front().k == 1);
}

TEST_CASE("hand trace: bend then straight") {
  // (0,0)->(1,0)->(1,1)->(2,1)->(3,1)->... straight, ell=(1,0), alpha=1.
  std::vector<std::uint8_t> codes{0, 2, 0};
  for (int i = 0; i < 17; ++i) codes.push_back(0);
  Trajectory traj = hand_traj(2, codes);
  ConeFrame frame = frame_e1(1, 1);
  RenewalScan scan = cone_renewal_scan(traj, frame, 5);

  REQUIRE(scan.attempts.size() == 2);
  CHECK(scan.attempts[0].s == 1);
  CHECK(scan.attempts[0].r == StoppingResult::at(2));
  CHECK(scan.attempts[0].m == doctest::Approx(1.0));
  CHECK(scan.attempts[1].s == 3);
  CHECK_FALSE(scan.attempts[1].r.hit);
  REQUIRE(scan.k_confirmed.has_value());
  CHECK(*scan.k_confirmed == 1);
  REQUIRE_FALSE(scan.taus.empty());
  CHECK(scan.taus.front() == 3);

  auto blocks = extract_blocks(scan, traj);
  REQUIRE_FALSE(blocks.empty());
  CHECK(blocks[0].k == 1);
  CHECK(blocks[0].dtau == 1);
  CHECK(blocks[0].dx == std::vector<std::int64_t>{1, 0});
}

TEST_CASE("no record, no attempts") {
  Trajectory down = hand_traj(2, std::vector<std::uint8_t>(30, 1));  // -e1 forever
  ConeFrame frame = frame_e1(1, 1);
  RenewalScan scan = cone_renewal_scan(down, frame, 5);
  CHECK(scan.attempts.empty());
  CHECK(scan.taus.empty());
  CHECK_FALSE(scan.k_confirmed.has_value());
  CHECK_FALSE(scan.censored_tail);
  CHECK(extract_blocks(scan, down).empty());
}

TEST_CASE("slab renewal: first confirmed record is the never-undercut one") {
  // Levels 0,1,0,1,2,3,4,... : the level-1 record is undercut, level 2 holds.
  std::vector<std::uint8_t> codes{0, 1, 0, 0};
  for (int i = 0; i < 16; ++i) codes.push_back(0);
  Trajectory traj = hand_traj(1, codes);
  RenewalScan slab = slab_renewal_scan(traj, std::vector<double>{1.0}, 5);
  REQUIRE_FALSE(slab.taus.empty());
  CHECK(slab.taus.front() == 4);  // the step reaching level 2

  // The d=1 cone has no transverse constraints, so the cone scan confirms
  // every record with room, including the undercut one at time 1.
  ConeFrame frame = cone_frame({Rat64(1)}, Rat64(1, 2));
  RenewalScan cone = cone_renewal_scan(traj, frame, 5);
  REQUIRE_FALSE(cone.taus.empty());
  CHECK(cone.taus.front() == 1);
}

TEST_CASE("straight line slab renewals match cone renewals") {
  Trajectory line = straight_line(2, 40);
  RenewalScan slab = slab_renewal_scan(line, std::vector<double>{1.0, 0.0}, 10);
  RenewalScan cone = cone_renewal_scan(line, frame_e1(1, 1), 10);
  CHECK(slab.taus == cone.taus);
}

TEST_CASE("scan agrees with the naive stopping-time ops") {
  ConeFrame frame = frame_e1(1, 2);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Trajectory traj = random_traj(400, seed, seed % 3 == 0 ? 0.0 : 0.15);
    RenewalScan scan = cone_renewal_scan(traj, frame, 50);

    // Attempts replay the S/R recursion driven by the public ops.
    std::vector<double> ell{1.0, 0.0};
    std::int64_t anchor_from = 0;
    double level = 0;  // X_0.ell
    for (std::size_t k = 0; k < scan.attempts.size(); ++k) {
      StoppingResult s = hit_halfspace(traj, ell, level, anchor_from);
      REQUIRE(s.hit);
      REQUIRE(s.t == scan.attempts[k].s);
      StoppingResult e = cone_exit(traj, frame, s.t);
      REQUIRE(e == scan.attempts[k].r);
      if (!e.hit) break;
      double m = 0;
      traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
        if (n <= e.t) m = std::max(m, static_cast<double>(x[0]));
      });
      REQUIRE(m == doctest::Approx(scan.attempts[k].m));
      anchor_from = e.t;
      level = m;
    }

    // Confirmed taus are exactly the records whose cone survives a window.
    if (scan.k_confirmed) {
      REQUIRE_FALSE(scan.taus.empty());
      CHECK(scan.taus.front() == scan.attempts[*scan.k_confirmed].s);
    }
    for (std::int64_t tau : scan.taus) {
      StoppingResult e = cone_exit(traj, frame, tau);
      CHECK(tau + 50 <= traj.horizon());
      CHECK((!e.hit || e.t > tau + 50));
    }
  }
}

TEST_CASE("scan invariants on random trajectories") {
  ConeFrame frame = frame_e1(1, 2);
  const std::int64_t w = 40;
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    Trajectory traj = random_traj(500, seed, 0.12);
    RenewalScan scan = cone_renewal_scan(traj, frame, w);

    SUBCASE("") {}
    // Interleaving S_0 <= R_0 < S_1 <= R_1 < ...
    for (std::size_t k = 0; k < scan.attempts.size(); ++k) {
      if (scan.attempts[k].r.hit) {
        CHECK(scan.attempts[k].s <= scan.attempts[k].r.t);
        if (k + 1 < scan.attempts.size())
          CHECK(scan.attempts[k].r.t < scan.attempts[k + 1].s);
      }
    }

    // Confirmed taus are strict records.
    std::vector<double> proj;
    traj.each_position([&](std::int64_t, std::span<const std::int64_t> x) {
      proj.push_back(static_cast<double>(x[0]));
    });
    for (std::int64_t tau : scan.taus) {
      double before = -1e300;
      for (std::int64_t n = 0; n < tau; ++n) before = std::max(before, proj[n]);
      CHECK(proj[tau] > before);
    }

    // Post-renewal confinement and the norm bound within the window.
    for (std::int64_t tau : scan.taus) {
      auto anchor = traj.position(tau);
      traj.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
        if (n <= tau || n > tau + w) return;
        std::vector<std::int64_t> rel(2);
        for (int i = 0; i < 2; ++i) rel[i] = x[i] - anchor[i];
        REQUIRE(in_cone(std::span<const std::int64_t>(rel), frame));
        double rn = std::sqrt(static_cast<double>(rel[0] * rel[0] + rel[1] * rel[1]));
        double re = static_cast<double>(rel[0]);
        REQUIRE(rn <= frame.c_alpha * re + 1e-9);
      });
    }

    // Cone renewal times are slab renewal times.
    RenewalScan slab = slab_renewal_scan(traj, std::vector<double>{1.0, 0.0}, w);
    CHECK(std::includes(slab.taus.begin(), slab.taus.end(), scan.taus.begin(),
                        scan.taus.end()));

    // Raising the window only removes confirmations.
    RenewalScan stricter = cone_renewal_scan(traj, frame, 2 * w);
    CHECK(std::includes(scan.taus.begin(), scan.taus.end(), stricter.taus.begin(),
                        stricter.taus.end()));
  }
}

TEST_CASE("block invariants on random trajectories") {
  ConeFrame frame = frame_e1(1, 2);
  std::int64_t total = 0;
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    Trajectory traj = random_traj(600, seed, 0.15);
    RenewalScan scan = cone_renewal_scan(traj, frame, 60);
    auto blocks = extract_blocks(scan, traj);
    std::int64_t expect_k = 1;
    for (const auto& b : blocks) {
      ++total;
      CHECK(b.k == expect_k++);
      CHECK(b.dtau >= 1);
      double dx_norm = std::sqrt(static_cast<double>(b.dx[0] * b.dx[0] + b.dx[1] * b.dx[1]));
      CHECK(dx_norm <= b.sup_norm + 1e-12);
      CHECK(b.dx[0] >= 1);  // dx.ell >= 1 for integer ell with gcd 1
    }
  }
  CHECK(total > 100);
}

TEST_CASE("float and exact frames agree on an axis direction") {
  ConeFrame exact = frame_e1(1, 2);
  REQUIRE(exact.is_exact());
  ConeFrame floaty = cone_frame(std::vector<double>{1.0, 0.0}, 0.5);
  REQUIRE_FALSE(floaty.is_exact());
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    Trajectory traj = random_traj(300, seed, 0.1);
    RenewalScan a = cone_renewal_scan(traj, exact, 30);
    RenewalScan b = cone_renewal_scan(traj, floaty, 30);
    CHECK(a.taus == b.taus);
    CHECK(a.attempts.size() == b.attempts.size());
  }
}

TEST_CASE("d = 3 scans agree with the naive ops") {
  auto spec = make_deterministic(3, {0.4, 0.1, 0.15, 0.1, 0.15, 0.1});
  for (auto ell : std::vector<std::vector<std::int64_t>>{{1, 0, 0}, {1, 1, 1}}) {
    std::vector<Rat64> er;
    for (auto v : ell) er.emplace_back(v);
    ConeFrame frame = cone_frame(er, Rat64(1, 3));
    REQUIRE(frame.is_exact());
    std::vector<double> ell_d(ell.begin(), ell.end());
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Environment env(spec, 900 + seed);
      Trajectory traj = simulate(env, {0, 0, 0}, 600, 1900 + seed);
      RenewalScan scan = cone_renewal_scan(traj, frame, 60);
      for (const auto& at : scan.attempts) {
        REQUIRE(cone_exit(traj, frame, at.s) == at.r);
      }
      for (std::int64_t tau : scan.taus) {
        StoppingResult e = cone_exit(traj, frame, tau);
        REQUIRE((!e.hit || e.t > tau + 60));
        double before = -1e300, level = 0;
        std::int64_t n = 0;
        traj.each_position([&](std::int64_t idx, std::span<const std::int64_t> x) {
          double p = 0;
          for (int i = 0; i < 3; ++i) p += static_cast<double>(x[i]) * ell_d[i];
          if (idx < tau) before = std::max(before, p);
          if (idx == tau) level = p;
          n = idx;
        });
        REQUIRE(level > before);
      }
    }
  }
}

TEST_CASE("settling diagnostics") {
  ConeFrame frame = frame_e1(1, 1);

  SUBCASE("straight line settles immediately with no transverse motion") {
    Trajectory line = straight_line(2, 20);
    ConeDiagnostics d = cone_diagnostics(line, frame);
    REQUIRE_FALSE(d.censored);
    CHECK(d.settle_index == 1);
    CHECK(d.c_min == doctest::Approx(1.0));
    CHECK(d.m_sq == doctest::Approx(0.0));
    CHECK(d.alpha1 == doctest::Approx(frame.alpha));
  }

  SUBCASE("bend path stays inside the closed cone") {
    std::vector<std::uint8_t> codes{0, 2, 0};
    for (int i = 0; i < 7; ++i) codes.push_back(0);
    Trajectory traj = hand_traj(2, codes);
    ConeDiagnostics d = cone_diagnostics(traj, frame);
    REQUIRE_FALSE(d.censored);
    CHECK(d.settle_index == 1);  // (1,1).(1,-1) = 0 stays inside the boundary
    CHECK(d.c_min == doctest::Approx(1.0));
    CHECK(d.m_sq == doctest::Approx(0.0));  // max over n in [1, settle_index]
    CHECK(d.alpha1 == doctest::Approx(1.0));
  }

  SUBCASE("drifting against ell never settles") {
    Trajectory down = hand_traj(2, std::vector<std::uint8_t>(20, 1));
    ConeDiagnostics d = cone_diagnostics(down, frame);
    CHECK(d.censored);
  }
}

TEST_CASE("scan preconditions") {
  Trajectory line = straight_line(2, 10);
  ConeFrame frame = frame_e1(1, 1);
  CHECK_THROWS(cone_renewal_scan(line, frame, 0));
  CHECK_THROWS(cone_renewal_scan(line, frame, 11));  // horizon < window
}
