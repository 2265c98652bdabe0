// Copyright 2026 The onicescu Authors
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

// Microbenchmarks contrasting the three evaluation routes: closed form,
// omega likelihood ratio, and the quadrature / series oracle.

#include <benchmark/benchmark.h>

#include "onicescu/catalog.hpp"
#include "onicescu/measures.hpp"
#include "onicescu/oracle.hpp"

namespace {

using namespace onicescu;

Density normal01() {
  const CatalogEntry entry = make_default_entry("normal");
  Vector s(2);
  s << 0.0, 1.0;
  return Density(entry.family, entry.family->source(s));
}

Density normal21() {
  const CatalogEntry entry = make_default_entry("normal");
  Vector s(2);
  s << 2.0, 1.0;
  return Density(entry.family, entry.family->source(s));
}

Density exponential(double lambda) {
  const CatalogEntry entry = make_default_entry("exponential");
  return Density(entry.family,
                 entry.family->source(lambda * Vector::Ones(1)));
}

Density poisson(double lambda) {
  const CatalogEntry entry = make_default_entry("poisson");
  return Density(entry.family,
                 entry.family->source(lambda * Vector::Ones(1)));
}

Density mvn2_identity() {
  const CatalogEntry entry = make_mvn(2);
  Vector s(6);
  s << 0.0, 0.0, 1.0, 0.0, 0.0, 1.0;
  return Density(entry.family, entry.family->source(s));
}

void BM_energy_closed_normal(benchmark::State& state) {
  const Density p = normal01();
  for (auto _ : state) benchmark::DoNotOptimize(energy(p).value);
}
BENCHMARK(BM_energy_closed_normal);

void BM_energy_omega_normal(benchmark::State& state) {
  const Density p = normal01();
  const Vector w = Vector::Zero(1);
  for (auto _ : state) benchmark::DoNotOptimize(energy_omega(p, w));
}
BENCHMARK(BM_energy_omega_normal);

void BM_energy_oracle_normal(benchmark::State& state) {
  const Density p = normal01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::integrate_product(p, p).value);
  }
}
BENCHMARK(BM_energy_oracle_normal);

void BM_divergence_closed_normal_pair(benchmark::State& state) {
  const Density p = normal01();
  const Density q = normal21();
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_schwarz(p, q).value);
}
BENCHMARK(BM_divergence_closed_normal_pair);

void BM_holder_closed_exponential_pair(benchmark::State& state) {
  const Density p = exponential(1.0);
  const Density q = exponential(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(holder(p, q, 3.0, 2.0).value);
  }
}
BENCHMARK(BM_holder_closed_exponential_pair);

void BM_oracle_product_exponential_pair(benchmark::State& state) {
  const Density p = exponential(1.0);
  const Density q = exponential(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::integrate_product(p, q).value);
  }
}
BENCHMARK(BM_oracle_product_exponential_pair);

void BM_energy_closed_poisson(benchmark::State& state) {
  const Density p = poisson(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(energy(p).value);
}
BENCHMARK(BM_energy_closed_poisson)->Arg(1)->Arg(4)->Arg(16);

void BM_energy_oracle_mvn2(benchmark::State& state) {
  const Density p = mvn2_identity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::integrate_product(p, p).value);
  }
}
BENCHMARK(BM_energy_oracle_mvn2);

void BM_mixture_energy_closed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> weights(n, 1.0 / n);
  std::vector<Density> comps;
  for (int i = 0; i < n; ++i) comps.push_back(exponential(1.0 + i));
  const Mixture mix(weights, comps);
  for (auto _ : state) benchmark::DoNotOptimize(mixture_energy(mix).value);
}
BENCHMARK(BM_mixture_energy_closed)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
