#include <benchmark/benchmark.h>

#include <random>

#include "entlab/criteria.hpp"
#include "entlab/evolution.hpp"
#include "entlab/linalg.hpp"
#include "entlab/states.hpp"
#include "entlab/sweep.hpp"

using namespace entlab;

static ComplexMatrix random_hermitian(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return (m + m.adjoint()) * Complex(0.5);
}

static void BM_HermEig(benchmark::State& state) {
  const ComplexMatrix a = random_hermitian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(a));
}
BENCHMARK(BM_HermEig)->Arg(9)->Arg(18);

static void BM_SingularValues9(benchmark::State& state) {
  const ComplexMatrix a = random_hermitian(9);
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(a));
}
BENCHMARK(BM_SingularValues9);

static void BM_EvolveAndReduce(benchmark::State& state) {
  const Evolver ev;
  const ComplexMatrix u = ev.propagator(2.0);
  const DensityMatrix rho = horodecki_state2(0.3);
  const QubitState q = aux_qubit(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(ev.evolve_and_reduce(rho, q, u));
}
BENCHMARK(BM_EvolveAndReduce);

static void BM_Evaluate(benchmark::State& state) {
  const DensityMatrix rho = Evolver().evolve_and_reduce(horodecki_state2(0.3), aux_qubit(0.7), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(rho));
}
BENCHMARK(BM_Evaluate);

static void BM_SmallSweep(benchmark::State& state) {
  SweepConfig cfg;
  cfg.alpha = {0.01, 0.99, 10};
  cfg.dt = {0.0, 5.0, 50};
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.grid_size()));
}
BENCHMARK(BM_SmallSweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
