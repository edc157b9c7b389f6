// Copyright 2026 The qtesd Authors
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

#include <benchmark/benchmark.h>

#include <random>

#include "qtesd/dynamics.hpp"
#include "qtesd/eigen.hpp"
#include "qtesd/esd.hpp"
#include "qtesd/random.hpp"
#include "qtesd/state.hpp"

namespace {

qtesd::DensityMatrix sample_state() {
  std::mt19937_64 rng(7);
  return qtesd::random_density_matrix(rng);
}

void BM_HermitianEigen(benchmark::State& st) {
  const auto pt = qtesd::partial_transpose(sample_state());
  for (auto _ : st) benchmark::DoNotOptimize(qtesd::hermitian_eigen(pt));
}
BENCHMARK(BM_HermitianEigen);

void BM_Negativity(benchmark::State& st) {
  const auto rho = sample_state();
  for (auto _ : st) benchmark::DoNotOptimize(qtesd::negativity(rho));
}
BENCHMARK(BM_Negativity);

void BM_Rk4Advance(benchmark::State& st) {
  const auto rho = sample_state().matrix();
  const qtesd::DecayRates rates{1.0, 0.5, 1.0};
  for (auto _ : st) benchmark::DoNotOptimize(qtesd::rk4_advance(rho, rates, 1.0, 1e-3));
}
BENCHMARK(BM_Rk4Advance)->Unit(benchmark::kMillisecond);

void BM_EvolveNumeric(benchmark::State& st) {
  const auto rho = sample_state();
  const qtesd::DecayRates rates{1.0, 0.5, 1.0};
  for (auto _ : st) benchmark::DoNotOptimize(qtesd::evolve_numeric(rho, rates, 1.0, 1e-3, 10));
}
BENCHMARK(BM_EvolveNumeric)->Unit(benchmark::kMillisecond);

void BM_ClassifyClosedForm(benchmark::State& st) {
  const auto family = qtesd::StateFamily::pure(qtesd::FamilyTag::Phi1, 0.6, 0.8);
  for (auto _ : st) benchmark::DoNotOptimize(qtesd::classify(family, {1.0, 1.0, 1.0}));
}
BENCHMARK(BM_ClassifyClosedForm)->Unit(benchmark::kMicrosecond);

void BM_ClassifyMixedAnalytic(benchmark::State& st) {
  const auto family = qtesd::StateFamily::mixed(qtesd::MixedFamilyParams::from_bc(0.02, 0.2));
  qtesd::ClassifyOptions opts;
  opts.path = qtesd::DetectionPath::Analytic;
  for (auto _ : st) benchmark::DoNotOptimize(qtesd::classify(family, {1.0, 1.0, 1.0}, opts));
}
BENCHMARK(BM_ClassifyMixedAnalytic)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
