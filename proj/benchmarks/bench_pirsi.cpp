// Copyright 2026 The pirsi Authors
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

#include <numeric>

#include "pirsi/analysis.hpp"
#include "pirsi/oracle.hpp"
#include "pirsi/scheme.hpp"
#include "pirsi/simnet.hpp"

using namespace pirsi;

namespace {

Params cell(const benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto k = static_cast<unsigned>(state.range(1));
  const auto m = static_cast<unsigned>(state.range(2));
  return validate_params(n, k, m, n - 1, 2);
}

DemandSideInfo canonical_ds(const Params& p) {
  std::vector<unsigned> side(p.side_info_count());
  std::iota(side.begin(), side.end(), 2u);
  return DemandSideInfo(p, 1, side);
}

void BM_ComputeDistribution(benchmark::State& state) {
  const Params p = cell(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::compute_distribution(p));
  }
}
BENCHMARK(BM_ComputeDistribution)
    ->Args({3, 3, 1})
    ->Args({4, 6, 1})
    ->Args({6, 10, 1});

void BM_GeneratePlan(benchmark::State& state) {
  const Params p = cell(state);
  const DemandSideInfo ds = canonical_ds(p);
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheme::generate_plan(p, ds, rng));
  }
}
BENCHMARK(BM_GeneratePlan)->Args({3, 3, 1})->Args({4, 6, 1})->Args({6, 10, 2});

void BM_ServerAnswer(benchmark::State& state) {
  const Params p = cell(state);
  const MessageDB db = random_db(p, 7u);
  const DemandSideInfo ds = canonical_ds(p);
  Rng rng(2);
  const QueryPlan plan = scheme::generate_plan(p, ds, rng);
  const QueryVector query = plan.vectors().back();
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheme::server_answer(db, query));
  }
}
BENCHMARK(BM_ServerAnswer)->Args({3, 3, 1})->Args({6, 10, 1});

void BM_SessionRoundTrip(benchmark::State& state) {
  const Params p = cell(state);
  simnet::Harness harness(p, 3u);
  const DemandSideInfo ds = canonical_ds(p);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(harness.run_session(ds, seed++));
  }
}
BENCHMARK(BM_SessionRoundTrip)->Args({3, 3, 1})->Args({4, 6, 1});

void BM_VerifyPrivacy(benchmark::State& state) {
  const Params p = cell(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::verify_privacy(p));
  }
}
BENCHMARK(BM_VerifyPrivacy)->Args({3, 3, 1})->Args({3, 4, 1})->Args({4, 6, 1});

void BM_ExpectedDownloadExact(benchmark::State& state) {
  const Params p = cell(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::expected_download_exact(p));
  }
}
BENCHMARK(BM_ExpectedDownloadExact)->Args({3, 3, 1})->Args({4, 6, 1});

}  // namespace

BENCHMARK_MAIN();
