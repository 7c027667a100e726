// serial reference vs OpenMP kernels on the same windows
#include <benchmark/benchmark.h>

#include "qvla/enveloping.hpp"
#include "qvla/examples.hpp"
#include "qvla/phi_modules.hpp"

using namespace qvla;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_jacobi_qtorus(benchmark::State& st) {
  QVLA q = quantum_torus(QuantumTorusData::generic(2, 1), 1, 2);
  for (auto _ : st) benchmark::DoNotOptimize(check_jacobi(q, CheckWindow{3, {}}, mode(st)).ok());
}

void BM_zeta_klein(benchmark::State& st) {
  QVLA q = klein_bottle(3);
  ZetaSamples s;
  for (auto _ : st) benchmark::DoNotOptimize(check_zeta_bracket(q, 1, s, mode(st)).ok());
}

void BM_vertex_sl2(benchmark::State& st) {
  VertexSamples s;
  s.max_degree = 3;
  s.count = 60;
  for (auto _ : st) {
    // fresh caches each round
    Enveloping V(twisted_affine(sl2_chevalley(), 1));
    benchmark::DoNotOptimize(check_vertex_axioms(V, s, mode(st)).ok());
  }
}

void BM_fock_commutator(benchmark::State& st) {
  ModuleSamples s;
  s.modes = 3;
  for (auto _ : st) {
    QuasiModule W(fock_module());
    benchmark::DoNotOptimize(check_equi_commutator(W, s, mode(st)).ok());
  }
}

}  // namespace

BENCHMARK(BM_jacobi_qtorus)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_zeta_klein)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vertex_sl2)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fock_commutator)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
