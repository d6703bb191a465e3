// Copyright 2026 The ctcdisc Authors.
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

// Serial reference vs OpenMP kernels: Monte Carlo trials and path enumeration.

#include <benchmark/benchmark.h>

#include "ctcdisc/markov.hpp"
#include "ctcdisc/simulate.hpp"
#include "test_support.hpp"

namespace {

using namespace ctcdisc;

const DiscriminationProblem& bb84() {
  static const DiscriminationProblem p = make_bb84_problem();
  return p;
}

void BM_AdaptiveSerial(benchmark::State& state) {
  const SimConfig cfg{10, static_cast<std::uint64_t>(state.range(0)), 7, FixedIndex{0}, 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_adaptive_serial(bb84(), cfg).errors);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AdaptiveOpenMP(benchmark::State& state) {
  const SimConfig cfg{10, static_cast<std::uint64_t>(state.range(0)), 7, FixedIndex{0}, 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_adaptive(bb84(), cfg).errors);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Dense P_k, so no path is pruned.
const DiscriminationProblem& dense4() {
  static const DiscriminationProblem p = [] {
    ctcdisc::testing::Rng rng(5);
    return ctcdisc::testing::random_generic_problem(4, rng);
  }();
  return p;
}

void BM_BruteForceSerial(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_error_serial(dense4(), n));
}

void BM_BruteForceOpenMP(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_error(dense4(), n));
}

}  // namespace

BENCHMARK(BM_AdaptiveSerial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AdaptiveOpenMP)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceOpenMP)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
