#include <benchmark/benchmark.h>

#include "conelab/convolution.hpp"
#include "conelab/cone.hpp"
#include "conelab/fejer.hpp"
#include "conelab/sampler.hpp"
#include "conelab/support.hpp"

namespace {

using namespace conelab;

ExactMeasure random_measure(std::size_t dim, std::size_t atoms, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Atom<Rational>> out;
  for (std::size_t i = 0; i < atoms; ++i) {
    std::vector<Rational> x;
    for (std::size_t d = 0; d < dim; ++d) x.push_back(rng.uniform_rational(Rational(-4), Rational(4), 8));
    out.push_back({std::move(x), Rational(static_cast<long>(rng.uniform_int(-5, 5)) | 1L)});
  }
  return ExactMeasure(dim, std::move(out));
}

void BM_ExactConvolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_measure(2, n, 1);
  const auto b = random_measure(2, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactConvolve)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_ExactPower(benchmark::State& state) {
  const auto a = random_measure(1, 6, 3);
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power(a, k));
}
BENCHMARK(BM_ExactPower)->DenseRange(2, 8, 2);

void BM_SuppC(benchmark::State& state) {
  const auto a = random_measure(3, static_cast<std::size_t>(state.range(0)), 4);
  const Cone cone(3, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(supp_c(cone, a));
}
BENCHMARK(BM_SuppC)->Range(8, 512);

void BM_FejerProductPower(benchmark::State& state) {
  GridSpec g;
  g.L = 100.0;
  g.N = 1 << 14;
  const auto mu = build_mu(g);
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(product_power(mu, k, g));
}
BENCHMARK(BM_FejerProductPower)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
