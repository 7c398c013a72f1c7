// Copyright 2026 The g24 Authors
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

#include <benchmark/benchmark.h>

#include <random>

#include "g24/angles.hpp"
#include "g24/enumerate.hpp"
#include "g24/plucker.hpp"

namespace g24 {
namespace {

Frame RandomFrame(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  RealVec4 a{n(rng), n(rng), n(rng), n(rng)};
  RealVec4 b{n(rng), n(rng), n(rng), n(rng)};
  return OrthonormalFrame(a, b);
}

void BM_Enumerate(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(EnumerateHeights(t).size());
}
BENCHMARK(BM_Enumerate)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PrincipalSines(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Frame a = RandomFrame(rng), b = RandomFrame(rng);
  for (auto _ : state) benchmark::DoNotOptimize(PrincipalSines(a, b).psi1);
}
BENCHMARK(BM_PrincipalSines);

void BM_ToPlucker(benchmark::State& state) {
  IntBasis basis{{IntVec4{12, -7, 33, 4}, IntVec4{-5, 18, 9, -41}}};
  for (auto _ : state) benchmark::DoNotOptimize(ToPlucker(basis).NormSq());
}
BENCHMARK(BM_ToPlucker);

void BM_PsiA(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  HeightTable table = EnumerateHeights(t);
  std::mt19937_64 rng(2);
  Frame a = RandomFrame(rng);
  for (auto _ : state) benchmark::DoNotOptimize(PsiA(a, t, table).psi1);
}
BENCHMARK(BM_PsiA)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace g24

BENCHMARK_MAIN();
