// Copyright 2026 The csc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <memory>

#include <benchmark/benchmark.h>

#include "csc/association_game.hpp"
#include "csc/hierarchy.hpp"
#include "csc/learning.hpp"
#include "csc/spectrum_game.hpp"

namespace csc {
namespace {

std::shared_ptr<const SpectrumAccessGame> spectrum(int n, double lambda, int channels = 3) {
  TopologyParams tp;
  tp.seed = 1;
  tp.n_cells = n;
  tp.n_channels = channels;
  tp.active_prob = {lambda};
  SpectrumAccessGameSpec s;
  s.topo = std::make_shared<const NetworkTopology>(generate_topology(tp));
  s.robust = lambda < 1.0;
  return build_spectrum_game(std::move(s));
}

void BM_RobustUtility(benchmark::State& state) {
  const auto g = spectrum(static_cast<int>(state.range(0)), 0.5, 1);
  const ActionProfile a(static_cast<std::size_t>(g->num_players()), 0);
  for (auto _ : state) benchmark::DoNotOptimize(g->utility(0, a));
}
BENCHMARK(BM_RobustUtility)->Arg(9)->Arg(30)->Arg(80);

void BM_RealizePayoffs(benchmark::State& state) {
  const auto g = spectrum(static_cast<int>(state.range(0)), 0.5);
  const ActionProfile a(static_cast<std::size_t>(g->num_players()), 1);
  std::vector<double> out(a.size());
  Rng rng(3);
  for (auto _ : state) {
    g->realize_payoffs(a, rng, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_RealizePayoffs)->Arg(9)->Arg(80);

void BM_EnumerateNe9Cell(benchmark::State& state) {
  const auto g = spectrum(9, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_pure_ne(*g, {kExpectationNeTolerance}));
}
BENCHMARK(BM_EnumerateNe9Cell)->Unit(benchmark::kMillisecond);

void BM_SlaRun9Cell(benchmark::State& state) {
  const auto g = spectrum(9, 0.5);
  const auto norm = PayoffNormalizer::from_game(*g);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_sla(*g, {20000, 0.05, 0.99}, seed++, norm));
}
BENCHMARK(BM_SlaRun9Cell)->Unit(benchmark::kMillisecond);

void BM_BestResponseRun(benchmark::State& state) {
  const auto g = spectrum(static_cast<int>(state.range(0)), 1.0);
  const ActionProfile start(static_cast<std::size_t>(g->num_players()), 0);
  for (auto _ : state) benchmark::DoNotOptimize(run_best_response(*g, start, {}, 1));
}
BENCHMARK(BM_BestResponseRun)->Arg(30)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_HierarchicalQ(benchmark::State& state) {
  const auto g = spectrum(static_cast<int>(state.range(0)), 1.0, 4);
  const auto cs = cluster_topology(g->topology());
  const ActionProfile start(static_cast<std::size_t>(g->num_players()), 0);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_hierarchical_q(g, cs, start, {}, seed++));
}
BENCHMARK(BM_HierarchicalQ)->Arg(50)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_AssociationBestResponse(benchmark::State& state) {
  const AssociationGame g({generate_association_topology({}), AssociationUtility::kDiscreteQoe});
  const ActionProfile start(static_cast<std::size_t>(g.num_players()), 0);
  for (auto _ : state) benchmark::DoNotOptimize(run_best_response(g, start, {}, 1));
}
BENCHMARK(BM_AssociationBestResponse)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace csc

BENCHMARK_MAIN();
