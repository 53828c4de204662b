#include <benchmark/benchmark.h>

#include "rwre/environment.hpp"
#include "rwre/estimators.hpp"
#include "rwre/renewal.hpp"
#include "rwre/trajectory.hpp"

namespace {

using namespace rwre;

const DistributionSpec kBiased = make_deterministic(2, {0.4, 0.1, 0.25, 0.25});
const DistributionSpec kDirichlet = make_dirichlet(2, {1, 1, 1, 1});

void BM_SiteProbsDirichlet(benchmark::State& state) {
  Environment env(kDirichlet, 1);
  std::int64_t k = 0;
  for (auto _ : state) {
    std::vector<std::int64_t> x{k, -k};
    benchmark::DoNotOptimize(env.site_probs(x));
    ++k;
  }
}
BENCHMARK(BM_SiteProbsDirichlet);

void BM_SimulateHomogeneous(benchmark::State& state) {
  Environment env(kBiased, 2);
  const std::int64_t horizon = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(env, {0, 0}, horizon, seed++));
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_SimulateHomogeneous)->Arg(1 << 12)->Arg(1 << 16);

void BM_SimulateDirichletEnv(benchmark::State& state) {
  const std::int64_t horizon = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Environment env(kDirichlet, 100 + seed);
    benchmark::DoNotOptimize(simulate(env, {0, 0}, horizon, seed));
    ++seed;
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_SimulateDirichletEnv)->Arg(1 << 12);

void BM_ConeRenewalScan(benchmark::State& state) {
  Environment env(kBiased, 3);
  const std::int64_t horizon = state.range(0);
  Trajectory traj = simulate(env, {0, 0}, horizon, 7);
  ConeFrame frame = cone_frame({Rat64(1), Rat64(0)}, Rat64(1, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_renewal_scan(traj, frame, 1000));
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_ConeRenewalScan)->Arg(1 << 14)->Arg(1 << 17);

void BM_ConeExitNaive(benchmark::State& state) {
  Environment env(kBiased, 4);
  Trajectory traj = simulate(env, {0, 0}, 1 << 14, 9);
  ConeFrame frame = cone_frame({Rat64(1), Rat64(0)}, Rat64(1, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_exit(traj, frame, 0));
  }
}
BENCHMARK(BM_ConeExitNaive);

void BM_ExtractBlocks(benchmark::State& state) {
  Environment env(kBiased, 5);
  Trajectory traj = simulate(env, {0, 0}, 1 << 16, 11);
  ConeFrame frame = cone_frame({Rat64(1), Rat64(0)}, Rat64(1, 2));
  RenewalScan scan = cone_renewal_scan(traj, frame, 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_blocks(scan, traj));
  }
}
BENCHMARK(BM_ExtractBlocks);

}  // namespace

BENCHMARK_MAIN();
