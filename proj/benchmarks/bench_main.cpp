#include <benchmark/benchmark.h>

#include "hexsub/subsolution.hpp"

namespace {

using namespace hexsub;

void BM_sigma_recurrence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Vector lam(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lam[static_cast<std::size_t>(i)] = 0.5 + 0.1 * i;
  for (auto _ : state) {
    auto e = elementary_symmetric(lam, n);
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_sigma_recurrence)->Arg(4)->Arg(8)->Arg(12);

void BM_eigen_sym(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = 1.0 / (1.0 + i + j);
  for (auto _ : state) {
    Spectrum s = eigen_sym(m);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_eigen_sym)->Arg(3)->Arg(6)->Arg(10);

GContext monge_ampere_ctx() {
  const OperatorSpec op = OperatorSpec::sigma_k(3, 3);
  return make_context(op, CandidateMatrix::diagonal({1.0, 1.0, 1.0}));
}

void BM_g_of_w(benchmark::State& state) {
  const GContext ctx = monge_ampere_ctx();
  double w = 1.0;
  for (auto _ : state) {
    w = (w > 8.0) ? 1.0 : w + 0.01;
    benchmark::DoNotOptimize(g_of_w(ctx, w));
  }
}
BENCHMARK(BM_g_of_w);

void BM_integrate_w(benchmark::State& state) {
  const GContext ctx = monge_ampere_ctx();
  for (auto _ : state) {
    WProfile p = integrate_w(ctx, 2.0, 0.0, 1e4);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_integrate_w);

}  // namespace

BENCHMARK_MAIN();
