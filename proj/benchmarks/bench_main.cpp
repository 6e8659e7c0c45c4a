#include <benchmark/benchmark.h>

#include "hypercol/hypergraph.hpp"
#include "hypercol/reductions.hpp"
#include "hypercol/spin.hpp"
#include "hypercol/tree_recursion.hpp"

using namespace hypercol;

namespace {

const PrecisionContext kCtx = PrecisionContext::make();

void BM_partition_zb_exact_cycle(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const Graph g = Graph::cycle(static_cast<int>(state.range(0)));
  const ModelParams p = build_params(2, 2, 2, kCtx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partition_function_zb_exact(g, p));
  }
}
BENCHMARK(BM_partition_zb_exact_cycle)->Arg(4)->Arg(6)->Arg(8);

void BM_count_colourings_halved_cycle(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const Hypergraph h = halve(Graph::cycle(static_cast<int>(state.range(0))), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_colourings(h, 2));
  }
}
BENCHMARK(BM_count_colourings_halved_cycle)->Arg(4)->Arg(6)->Arg(8);

void BM_tree_step_full(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const int q = static_cast<int>(state.range(0));
  const ModelParams p = build_params(q, 2, 5 * q * q + 1, kCtx);
  std::vector<Real> C(q + 1, Real(1) / (q + 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_step(C, p));
  }
}
BENCHMARK(BM_tree_step_full)->Arg(4)->Arg(8)->Arg(16);

void BM_tree_step_reduced(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const int q = static_cast<int>(state.range(0));
  const ModelParams p = build_params(q, 2, 5 * q * q + 1, kCtx);
  const TypeTriple qv =
      TypeTriple::make(Real(q) / 2, Real(q) / 2, Real(0), q);
  std::array<Real, 4> C{Real(1), Real(1), Real(1), Real(0)};
  const Real norm = C[0] + qv.q1 * C[1] + qv.q2 * C[2];
  for (Real& c : C) c /= norm;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_step_reduced(C, qv, p));
  }
}
BENCHMARK(BM_tree_step_reduced)->Arg(4)->Arg(8)->Arg(16);

void BM_solve_half_half(benchmark::State& state) {
  PrecisionScope scope(kCtx);
  const ModelParams p = build_params(4, 2, 81, kCtx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_half_half(p));
  }
}
BENCHMARK(BM_solve_half_half);

}  // namespace

BENCHMARK_MAIN();
