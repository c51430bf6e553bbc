#include <benchmark/benchmark.h>

#include <map>

#include "biotfs/solver.hpp"
#include "biotfs/spectral.hpp"

using namespace biotfs;

namespace {

const BiotProblem& problem(std::size_t n) {
  static std::map<std::size_t, BiotProblem> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_problem(n, MaterialParams{})).first;
  return it->second;
}

void BM_Discretize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(n, MaterialParams{}));
}
BENCHMARK(BM_Discretize)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FactorizeElasticity(benchmark::State& state) {
  const auto& A = problem(static_cast<std::size_t>(state.range(0))).system.A();
  for (auto _ : state) benchmark::DoNotOptimize(Factorization(A));
}
BENCHMARK(BM_FactorizeElasticity)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SchurApply(benchmark::State& state) {
  const auto& s = problem(static_cast<std::size_t>(state.range(0))).system;
  const Vector p = seeded_start_vector(s.num_pressure(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(schur_apply(s, p));
}
BENCHMARK(BM_SchurApply)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_EstimateSpectrum(benchmark::State& state) {
  const auto& s = problem(static_cast<std::size_t>(state.range(0))).system;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_spectrum(s, {1e-3, 50000, 42}));
}
BENCHMARK(BM_EstimateSpectrum)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_TimeMarchOptimal(benchmark::State& state) {
  const auto& prob = problem(static_cast<std::size_t>(state.range(0)));
  SolverConfig c;
  c.L = estimate_spectrum(prob.system, {1e-8, 50000, 42}).l_opt;
  for (auto _ : state) benchmark::DoNotOptimize(time_march(prob, c, TimeGrid{}));
}
BENCHMARK(BM_TimeMarchOptimal)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
