#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "rwre/parallel.hpp"
#include "rwre/trajectory.hpp"

using namespace rwre;

namespace {

// Direction codes: +e1=0, -e1=1, +e2=2, -e2=3, ...
Trajectory hand_traj(int d, std::vector<std::uint8_t> codes,
                     std::vector<std::int64_t> start = {}) {
  Trajectory t;
  t.d = d;
  t.start = start.empty() ? std::vector<std::int64_t>(d, 0) : start;
  t.steps = std::move(codes);
  return t;
}

const std::vector<double> kE1{1.0, 0.0};

}  // namespace

TEST_CASE("step_sample inverts the CDF in direction order") {
  std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
  CHECK(step_sample(uniform, 0.0) == 0);   // first bin
  CHECK(step_sample(uniform, 0.6) == 2);   // third bin: [0.5, 0.75)
  std::vector<double> degenerate{1, 0, 0, 0};
  CHECK(step_sample(degenerate, 0.0) == 0);
  CHECK(step_sample(degenerate, 0.999) == 0);
  std::vector<double> shifted{0.0, 0.3, 0.7, 0.0};
  CHECK(step_sample(shifted, 0.0) == 1);
  CHECK_THROWS(step_sample(uniform, 1.0));
  CHECK_THROWS(step_sample(uniform, -0.1));
}

TEST_CASE("simulate basics") {
  auto spec = make_deterministic(2, {1, 0, 0, 0});
  Environment env(spec, 5);

  SUBCASE("zero horizon") {
    Trajectory t = simulate(env, {0, 0}, 0, 7);
    CHECK(t.horizon() == 0);
    CHECK(t.position(0) == std::vector<std::int64_t>{0, 0});
  }
  SUBCASE("degenerate law walks straight") {
    Trajectory t = simulate(env, {0, 0}, 50, 7);
    for (std::int64_t n = 0; n <= 50; ++n)
      CHECK(t.position(n) == std::vector<std::int64_t>{n, 0});
  }
  SUBCASE("identical inputs give identical trajectories") {
    auto rnd = make_dirichlet(2, {1, 1, 1, 1});
    Environment e(rnd, 99);
    Trajectory a = simulate(e, {0, 0}, 500, 123);
    Trajectory b = simulate(e, {0, 0}, 500, 123);
    CHECK(a.steps == b.steps);
    Trajectory c = simulate(e, {0, 0}, 500, 124);
    CHECK(a.steps != c.steps);
  }
}

TEST_CASE("longer horizons extend shorter ones") {
  auto spec = make_dirichlet(2, {0.8, 1.1, 0.9, 1.2});
  Environment env(spec, 321);
  Trajectory a = simulate(env, {0, 0}, 100, 42);
  Trajectory b = simulate(env, {0, 0}, 1000, 42);
  REQUIRE(b.steps.size() == 1000);
  for (std::size_t i = 0; i < 100; ++i) REQUIRE(a.steps[i] == b.steps[i]);
}

TEST_CASE("stopping results only refine from censored to hit") {
  auto spec = make_dirichlet(1, {1.5, 1.0});
  Environment env(spec, 5150);
  Trajectory shorter = simulate(env, {0}, 64, 9);
  Trajectory longer = simulate(env, {0}, 4096, 9);
  std::vector<double> ell{1.0};
  for (double u : {1.0, 3.0, 8.0, 15.0}) {
    StoppingResult a = hit_halfspace(shorter, ell, u, 0);
    StoppingResult b = hit_halfspace(longer, ell, u, 0);
    if (a.hit) CHECK(a == b);
  }
}

TEST_CASE("consecutive positions differ by a unit step") {
  auto spec = make_dirichlet(3, {1, 1, 1, 1, 1, 1});
  Environment env(spec, 8);
  Trajectory t = simulate(env, {0, 0, 0}, 300, 17);
  std::vector<std::int64_t> prev;
  t.each_position([&](std::int64_t n, std::span<const std::int64_t> x) {
    if (n > 0) {
      std::int64_t dist = 0;
      for (int i = 0; i < 3; ++i) dist += std::llabs(x[i] - prev[i]);
      CHECK(dist == 1);
    }
    prev.assign(x.begin(), x.end());
  });
}

TEST_CASE("batch simulation is schedule independent") {
  auto spec = make_dirichlet(2, {1, 2, 2, 1});
  const int n = 48;
  std::vector<Trajectory> serial(n), threaded(n);
  for (int w = 0; w < n; ++w) {
    Environment env(spec, 1000 + w);
    serial[w] = simulate(env, {0, 0}, 200, 2000 + w);
  }
  parallel_for(n, 8, [&](std::size_t w) {
    Environment env(spec, 1000 + static_cast<int>(w));
    threaded[w] = simulate(env, {0, 0}, 200, 2000 + static_cast<int>(w));
  });
  for (int w = 0; w < n; ++w) CHECK(serial[w].steps == threaded[w].steps);
}

TEST_CASE("hit_halfspace on hand trajectories") {
  Trajectory line = hand_traj(2, std::vector<std::uint8_t>(10, 0));  // X_n = n e1
  CHECK(hit_halfspace(line, kE1, 5.0, 0) == StoppingResult::at(6));
  CHECK(hit_halfspace(line, kE1, -1.0, 0) == StoppingResult::at(1));
  CHECK(hit_halfspace(line, kE1, 100.0, 0) == StoppingResult::censored());
  CHECK(hit_halfspace(line, kE1, 5.0, 6) == StoppingResult::at(7));  // strict from_index

  Trajectory down = hand_traj(2, std::vector<std::uint8_t>(10, 1));  // X_n = -n e1
  CHECK(hit_halfspace(down, kE1, 0.0, 0) == StoppingResult::censored());
}

TEST_CASE("return_time boundary is inclusive") {
  Trajectory line = hand_traj(2, std::vector<std::uint8_t>(10, 0));
  CHECK(return_time(line, kE1, 0) == StoppingResult::censored());

  Trajectory back = hand_traj(2, {1, 0, 0});  // first step -e1
  CHECK(return_time(back, kE1, 0) == StoppingResult::at(1));

  Trajectory side = hand_traj(2, {2, 0, 0});  // first step +e2: X1.e1 = 0 <= 0
  CHECK(return_time(side, kE1, 0) == StoppingResult::at(1));
}

TEST_CASE("cone_exit on hand trajectories") {
  ConeFrame frame = cone_frame({Rat64(1), Rat64(0)}, Rat64(1));
  Trajectory line = hand_traj(2, std::vector<std::uint8_t>(10, 0));
  CHECK(cone_exit(line, frame, 0) == StoppingResult::censored());

  // (0,0) -> (1,0) -> (1,1): relative to anchor (1,0), (0,1).(1,-1) = -1 < 0.
  Trajectory bend = hand_traj(2, {0, 2, 0, 0});
  CHECK(cone_exit(bend, frame, 1) == StoppingResult::at(2));
  CHECK(cone_exit(bend, frame, 2) == StoppingResult::censored());  // apex membership

  // Anchoring at an index never exits at relative time zero.
  Trajectory wander = hand_traj(2, {2, 3, 2, 3});
  for (std::int64_t a = 0; a <= 4; ++a) {
    StoppingResult r = cone_exit(wander, frame, a);
    if (r.hit) CHECK(r.t > a);
  }
}

TEST_CASE("backtrack times compose the return-time recursion") {
  std::vector<double> one{1.0};
  Trajectory line = hand_traj(1, std::vector<std::uint8_t>(8, 0));
  for (const auto& r : backtrack_times(line, one, 4)) CHECK_FALSE(r.hit);

  Trajectory down = hand_traj(1, std::vector<std::uint8_t>(8, 1));  // 0,-1,-2,...
  auto bt = backtrack_times(down, one, 3);
  CHECK(bt[0] == StoppingResult::at(1));
  CHECK(bt[1] == StoppingResult::at(2));
  CHECK(bt[2] == StoppingResult::at(3));

  Trajectory seesaw = hand_traj(1, {0, 1, 0, 1});  // 0,1,0,1,0
  auto bs = backtrack_times(seesaw, one, 3);
  CHECK(bs[0] == StoppingResult::at(2));
  CHECK(bs[1] == StoppingResult::at(4));
  CHECK_FALSE(bs[2].hit);  // censoring propagates
}

TEST_CASE("trace lines are `n x_1 ... x_d`") {
  Trajectory bend = hand_traj(2, {0, 2});
  std::ostringstream os;
  write_trace(bend, os);
  CHECK(os.str() == "0 0 0\n1 1 0\n2 1 1\n");
}
