// Copyright 2026 The Cournot Learning Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "cournot/equilibrium.h"
#include "cournot/presets.h"
#include "cournot/simulation.h"

namespace cournot {
namespace {

const char* const kPresetIds[] = {"M1", "M2", "G1", "G4", "G7", "G9"};

void BM_SolveEquilibrium(benchmark::State& state) {
  const CournotGame game = FindPreset(kPresetIds[state.range(0)]).game;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveEquilibrium(game));
  }
  state.SetLabel(kPresetIds[state.range(0)]);
}
BENCHMARK(BM_SolveEquilibrium)->DenseRange(0, 5);

RunConfig Config(Algorithm algorithm, std::int64_t rounds) {
  LearnerConfig learner;
  learner.algorithm = algorithm;
  return RunConfig{FindPreset("M1").game, {learner}, rounds, 1};
}

void BM_RunGameFkm(benchmark::State& state) {
  const RunConfig config = Config(Algorithm::kFkm, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunGame(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunGameFkm)->Arg(1000)->Arg(10000);

void BM_RunGameOmd(benchmark::State& state) {
  const RunConfig config = Config(Algorithm::kOmd, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunGame(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunGameOmd)->Arg(1000)->Arg(10000);

void BM_Regret(benchmark::State& state) {
  const RunConfig config = Config(Algorithm::kFkm, state.range(0));
  const Trajectory traj = RunGame(config);
  const std::vector<std::int64_t> points = {state.range(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeRegret(config.game, traj, 0, points));
  }
}
BENCHMARK(BM_Regret)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cournot

BENCHMARK_MAIN();
