#include "circumcone/circumcone.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace circumcone;

ConicBase random_base(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Vector> raw;
  for (Eigen::Index i = 0; i < p; ++i) {
    Vector v(n);
    for (Eigen::Index j = 0; j < n; ++j) v(j) = normal(rng);
    raw.push_back(v);
  }
  return build_base(raw);
}

void BM_CircumGram(benchmark::State& state) {
  const ConicBase b = random_base(state.range(0), state.range(0) / 2 + 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(circum_via_gram(b));
}

void BM_CircumProjection(benchmark::State& state) {
  const ConicBase b = random_base(state.range(0), state.range(0) / 2 + 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(circum_via_projection(b));
}

void BM_CircumSystem(benchmark::State& state) {
  const ConicBase b = random_base(state.range(0), state.range(0) / 2 + 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(circum_via_system(b));
}

void BM_Jacobi(benchmark::State& state) {
  const Matrix m = gram(random_base(state.range(0), state.range(0), 2)).entries;
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(m));
}

void BM_DirectionalDepth(benchmark::State& state) {
  const ConicBase b = random_base(state.range(0), state.range(0), 3);
  const CircumDirection c = circum(b);
  const Vector w = Vector::Ones(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(directional_depth(b, c.norm_sq, w));
}

void BM_PsdDepth(benchmark::State& state) {
  const ConeDescriptor c = ConeDescriptor::psd(state.range(0));
  const Vector w = Vector::LinSpaced(c.dim(), -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(directional_depth_np(c, w));
}

BENCHMARK(BM_CircumGram)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_CircumProjection)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_CircumSystem)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_Jacobi)->RangeMultiplier(2)->Range(4, 32);
BENCHMARK(BM_DirectionalDepth)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_PsdDepth)->DenseRange(2, 8, 3);

}  // namespace
BENCHMARK_MAIN();
