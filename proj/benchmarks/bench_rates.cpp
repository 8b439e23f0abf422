// bench_rates.cpp — microbenchmarks for the rate tables, the cubic solver,
// the trajectory evolutions, and a small classification grid.
#include <random>

#include <benchmark/benchmark.h>

#include "lbath/born.hpp"
#include "lbath/classify.hpp"
#include "lbath/exact.hpp"
#include "lbath/model.hpp"
#include "lbath/redfield.hpp"

namespace {

using namespace lbath;

GlobalBasis basis_for(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  SystemSpec spec;
  spec.h_s = 0.5 * (m + m.adjoint().eval());
  return diagonalize(spec, ReservoirSpec{});
}

InitialState state_for(int n) {
  InitialState state;
  state.psi0 = 0.6;
  state.psi = Eigen::VectorXcd::Constant(n, cplx(0.8 / std::sqrt(double(n)), 0.0));
  return state;
}

void bm_exact_rates(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  const GlobalBasis basis = basis_for(n, 11u);
  const ReservoirSpec r{1.0, 2.5, 0.2};
  for (auto _ : bench) benchmark::DoNotOptimize(exact_rates(basis, r));
}
BENCHMARK(bm_exact_rates)->Arg(1)->Arg(4)->Arg(16);

void bm_born_rates(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  const GlobalBasis basis = basis_for(n, 13u);
  const ReservoirSpec r{1.0, 2.5, 0.2};
  for (auto _ : bench) benchmark::DoNotOptimize(born_rates(basis, r));
}
BENCHMARK(bm_born_rates)->Arg(1)->Arg(4)->Arg(16);

void bm_solve_cubic(benchmark::State& bench) {
  const ReservoirSpec r{1.0, 2.5, 0.2};
  const CubicCoefficients c = char_poly(0.4, -1.1, r);
  for (auto _ : bench) benchmark::DoNotOptimize(solve_cubic(c));
}
BENCHMARK(bm_solve_cubic);

void bm_evolve_exact(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  const GlobalBasis basis = basis_for(n, 17u);
  const ReservoirSpec r{1.0, 2.0, 0.0};
  const InitialState state = state_for(n);
  std::vector<double> times;
  for (int k = 0; k <= 100; ++k) times.push_back(0.05 * k);
  for (auto _ : bench) benchmark::DoNotOptimize(evolve_exact(state, basis, r, times));
}
BENCHMARK(bm_evolve_exact)->Arg(2)->Arg(8);

void bm_evolve_born(benchmark::State& bench) {
  const int n = static_cast<int>(bench.range(0));
  const GlobalBasis basis = basis_for(n, 19u);
  const ReservoirSpec r{1.0, 2.0, 0.0};
  const InitialState state = state_for(n);
  std::vector<double> times;
  for (int k = 0; k <= 100; ++k) times.push_back(0.05 * k);
  for (auto _ : bench) benchmark::DoNotOptimize(evolve_born(state, basis, r, times));
}
BENCHMARK(bm_evolve_born)->Arg(2)->Arg(8);

void bm_region_map(benchmark::State& bench) {
  GridSpec grid;
  grid.n_de = 11;
  grid.n_gamma = 10;
  const int jobs = static_cast<int>(bench.range(0));
  for (auto _ : bench) benchmark::DoNotOptimize(region_map(grid, jobs));
}
BENCHMARK(bm_region_map)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
