// Copyright 2026 The hlav Authors
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

#include "hlav/correlation.hpp"
#include "hlav/singular.hpp"

namespace {

void BM_BuildSieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto pb = hlav::build_sieve(limit);
    benchmark::DoNotOptimize(pb);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildSieve)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_PairCounts(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  const auto max_shift = static_cast<std::uint64_t>(state.range(1));
  const auto pb = hlav::build_sieve(x + max_shift);
  for (auto _ : state) {
    auto t = hlav::pair_counts(pb, 0, x, max_shift);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_PairCounts)
    ->Args({1'000'000, 2})
    ->Args({1'000'000, 5'248})
    ->Args({10'000'000, 21'876})
    ->Unit(benchmark::kMillisecond);

void BM_TupleCount(benchmark::State& state) {
  const auto pb = hlav::build_sieve(1'000'100);
  const hlav::TupleSpec spec({2, 6});
  for (auto _ : state) benchmark::DoNotOptimize(hlav::tuple_count(pb, 1'000'000, spec));
}
BENCHMARK(BM_TupleCount)->Unit(benchmark::kMicrosecond);

void BM_TupleConstant(benchmark::State& state) {
  const hlav::SingularSeries series(static_cast<std::uint64_t>(state.range(0)));
  const hlav::TupleSpec spec({2, 6, 8});
  for (auto _ : state) benchmark::DoNotOptimize(series.tuple_constant(spec));
}
BENCHMARK(BM_TupleConstant)->Arg(1'000'000)->Unit(benchmark::kMicrosecond);

void BM_GallagherAverage(benchmark::State& state) {
  const hlav::SingularSeries series(1'000'000);
  const auto y = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hlav::gallagher_average(y, series));
}
BENCHMARK(BM_GallagherAverage)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
