#include <benchmark/benchmark.h>

#include "d4walk/cospectrality.hpp"
#include "d4walk/evolution.hpp"
#include "d4walk/readout.hpp"
#include "d4walk/spectrum.hpp"

using namespace d4walk;

static void BM_SupportEigenvalues(benchmark::State& state) {
  TreeParams p;
  for (std::int64_t j = 0; j < state.range(0); ++j) {
    p.q.push_back(2 * j + 1);
    p.a.push_back(j + 2);
  }
  for (auto _ : state) benchmark::DoNotOptimize(support_eigenvalues(p));
}
BENCHMARK(BM_SupportEigenvalues)->Arg(2)->Arg(8)->Arg(32);

static void BM_DenseDecomposition(benchmark::State& state) {
  const LabeledTree tree(type_c_params(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SpectralDecomposition::of_tree(tree, {}, ProjectionMethod::Dense));
  }
  state.counters["vertices"] = tree.n();
}
BENCHMARK(BM_DenseDecomposition)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_QuotientDecomposition(benchmark::State& state) {
  const TreeParams p = dist4_params(state.range(0));
  const auto fam = recognize_family(p);
  const LabeledTree tree(p);
  const Vertex xy[] = {fam->x, fam->y};
  for (auto _ : state) {
    benchmark::DoNotOptimize(SpectralDecomposition::of_tree(tree, xy, ProjectionMethod::Quotient));
  }
  state.counters["vertices"] = tree.n();
}
BENCHMARK(BM_QuotientDecomposition)->Arg(26)->Arg(146)->Unit(benchmark::kMillisecond);

static void BM_KernelFidelity(benchmark::State& state) {
  const TreeParams p{{0, 2, 22}, {99, 96, 42}};
  const auto fam = recognize_family(p);
  const auto k = TransferKernel::for_tree(p, fam->x, fam->y, ProjectionMethod::Quotient);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.fidelity(t));
    t += 0.01;
  }
}
BENCHMARK(BM_KernelFidelity);

static void BM_KernelSymbolic(benchmark::State& state) {
  const TreeParams p = type_c_params(3);
  const auto fam = recognize_family(p);
  const auto k = TransferKernel::for_tree(p, fam->x, fam->y);
  const auto pc = pell_convergents(60);
  const auto t = SymbolicTime::pi_over_sqrt(pc.back().alpha, 2);
  for (auto _ : state) benchmark::DoNotOptimize(k.fidelity(t));
}
BENCHMARK(BM_KernelSymbolic);
