// Copyright 2026 The AlignDP Authors
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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <limits>
#include <vector>

#include "aligndp/accountant.h"
#include "aligndp/experiments.h"
#include "aligndp/mechanism.h"
#include "aligndp/rng.h"

namespace aligndp {
namespace {

const Population& DefaultPopulation() {
  static const Population pop = MakeDistribution(SimConfig{});
  return pop;
}

void BM_DeriveStream(benchmark::State& state) {
  std::uint64_t run = 0;
  for (auto _ : state) {
    RandomStream rng =
        DeriveStream(20251015, StreamPurpose::kMseDecay, {1000, run++, 1});
    benchmark::DoNotOptimize(rng());
  }
}
BENCHMARK(BM_DeriveStream);

void BM_SampleRecords(benchmark::State& state) {
  const Population& pop = DefaultPopulation();
  RandomStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SampleRecords(pop.dist, static_cast<std::size_t>(state.range(0)), rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleRecords)->Arg(1000)->Arg(100000);

void BM_PrivatizeAll(benchmark::State& state) {
  const Population& pop = DefaultPopulation();
  const RapporParams params = DeriveParams(0.25, 20);
  RandomStream rng(2);
  const auto records =
      SampleRecords(pop.dist, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PrivatizeAll(records, pop.partition, params, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrivatizeAll)->Arg(1000)->Arg(100000);

void BM_Debias(benchmark::State& state) {
  const RapporParams params = DeriveParams(0.25, 20);
  std::vector<std::uint64_t> histogram(20, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Debias(histogram, 1000, params));
  }
}
BENCHMARK(BM_Debias);

void BM_Aggregate(benchmark::State& state) {
  const Population& pop = DefaultPopulation();
  const RapporParams params = DeriveParams(0.25, 20);
  RandomStream rng(3);
  const auto records =
      SampleRecords(pop.dist, static_cast<std::size_t>(state.range(0)), rng);
  const auto reports = PrivatizeAll(records, pop.partition, params, rng);
  PrivacyLedger ledger(std::numeric_limits<double>::infinity(),
                       CompositionMode::kBasic);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Aggregate(reports, pop.partition, params, ledger));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Aggregate)->Arg(1000)->Arg(100000);

void BM_LedgerCharge(benchmark::State& state) {
  const auto mode = static_cast<CompositionMode>(state.range(0));
  for (auto _ : state) {
    PrivacyLedger ledger(std::numeric_limits<double>::infinity(), mode);
    for (int i = 0; i < 100; ++i) benchmark::DoNotOptimize(ledger.Charge(0.1));
  }
}
BENCHMARK(BM_LedgerCharge)
    ->Arg(static_cast<int>(CompositionMode::kBasic))
    ->Arg(static_cast<int>(CompositionMode::kAdvanced));

}  // namespace
}  // namespace aligndp

BENCHMARK_MAIN();
