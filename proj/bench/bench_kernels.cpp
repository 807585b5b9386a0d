#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "wco/halfplane.hpp"
#include "wco/kernels.hpp"

using namespace wco;

namespace {

std::vector<complex> random_values(std::size_t n, unsigned seed, double scale = 1.0) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<complex> v(n);
  for (auto& x : v) x = scale * complex(nd(rng), nd(rng));
  return v;
}

template <auto Kernel>
void eval_many(benchmark::State& state) {
  const auto c = random_values(257, 1);
  const auto z = random_values(static_cast<std::size_t>(state.range(0)), 2, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(c, z));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void smallest_pairs(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto z = random_values(n, 3), f = random_values(n, 4), g = random_values(n, 5), w = random_values(n, 6);
  const kernels::PairScanInput in{z, f, g, w};
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(in, 24));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) / 2);
}

template <auto Kernel>
void fourier_sum(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> om(n), ts(512);
  for (std::size_t k = 0; k < n; ++k) om[k] = 0.01 * static_cast<double>(k);
  for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = 0.01 * static_cast<double>(k);
  const auto w = random_values(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(om, w, ts));
}

void transform_serial(benchmark::State& state) {
  const Section4Signals s = section4_pair();
  for (auto _ : state) benchmark::DoNotOptimize(fourier_laplace_serial(s.g, complex(0.5, 3.0)));
}

void transform_parallel(benchmark::State& state) {
  const Section4Signals s = section4_pair();
  for (auto _ : state) benchmark::DoNotOptimize(fourier_laplace(s.g, complex(0.5, 3.0)));
}

}  // namespace

BENCHMARK(eval_many<kernels::serial::eval_many>)->Name("eval_many/serial")->Arg(4096)->Arg(65536);
BENCHMARK(eval_many<kernels::parallel::eval_many>)->Name("eval_many/parallel")->Arg(4096)->Arg(65536);
BENCHMARK(smallest_pairs<kernels::serial::smallest_pairs>)->Name("smallest_pairs/serial")->Arg(1024)->Arg(2048);
BENCHMARK(smallest_pairs<kernels::parallel::smallest_pairs>)->Name("smallest_pairs/parallel")->Arg(1024)->Arg(2048);
BENCHMARK(fourier_sum<kernels::serial::fourier_sum>)->Name("fourier_sum/serial")->Arg(4096);
BENCHMARK(fourier_sum<kernels::parallel::fourier_sum>)->Name("fourier_sum/parallel")->Arg(4096);
BENCHMARK(transform_serial)->Name("fourier_laplace/serial");
BENCHMARK(transform_parallel)->Name("fourier_laplace/parallel");

BENCHMARK_MAIN();
