// Serial reference vs OpenMP kernels. Arguments: two_j, number of directions.
#include <benchmark/benchmark.h>

#include "qq/kernels.hpp"
#include "qq/sphere.hpp"

namespace {

using namespace qq;

std::vector<Vec3> dirs_for(benchmark::State& st) { return fibonacci_sphere(static_cast<int>(st.range(1))); }

qq::CMatrix random_hermitian(int dim) {
  Rng rng(7);
  std::normal_distribution<double> n;
  CMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = complex(n(rng), n(rng));
  }
  return a + a.adjoint();
}

void BM_gram_serial(benchmark::State& st) {
  const SpinJ spin(static_cast<int>(st.range(0)));
  const auto dirs = dirs_for(st);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::gram_matrix_serial(spin, dirs));
}

void BM_gram_parallel(benchmark::State& st) {
  const SpinJ spin(static_cast<int>(st.range(0)));
  const auto dirs = dirs_for(st);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::gram_matrix(spin, dirs));
}

void BM_husimi_serial(benchmark::State& st) {
  const SpinJ spin(static_cast<int>(st.range(0)));
  const auto dirs = dirs_for(st);
  const CMatrix a = random_hermitian(spin.dim());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::husimi_values_serial(a, spin, dirs));
}

void BM_husimi_parallel(benchmark::State& st) {
  const SpinJ spin(static_cast<int>(st.range(0)));
  const auto dirs = dirs_for(st);
  const CMatrix a = random_hermitian(spin.dim());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::husimi_values(a, spin, dirs));
}

void BM_overlap_serial(benchmark::State& st) {
  const SpinJ spin(static_cast<int>(st.range(0)));
  const auto dirs = dirs_for(st);
  const CVector psi = CVector::Ones(spin.dim()).normalized();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::overlap_values_serial(psi, spin, dirs));
}

void BM_overlap_parallel(benchmark::State& st) {
  const SpinJ spin(static_cast<int>(st.range(0)));
  const auto dirs = dirs_for(st);
  const CVector psi = CVector::Ones(spin.dim()).normalized();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::overlap_values(psi, spin, dirs));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int tj : {4, 10}) {
    for (int n : {100, 1000, 4000}) b->Args({tj, n});
  }
}

}  // namespace

BENCHMARK(BM_gram_serial)->Apply(sizes);
BENCHMARK(BM_gram_parallel)->Apply(sizes);
BENCHMARK(BM_husimi_serial)->Apply(sizes);
BENCHMARK(BM_husimi_parallel)->Apply(sizes);
BENCHMARK(BM_overlap_serial)->Apply(sizes);
BENCHMARK(BM_overlap_parallel)->Apply(sizes);

int main(int argc, char** argv) {
  qq::kernels::apply_thread_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
