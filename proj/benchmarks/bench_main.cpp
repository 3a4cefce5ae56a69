#include "qfp/arcs.hpp"
#include "qfp/arith.hpp"
#include "qfp/counting.hpp"
#include "qfp/generators.hpp"
#include "qfp/offdiag.hpp"
#include "qfp/structure.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qfp;

namespace {

Limits single_thread() {
  Limits l;
  l.threads = 1;
  return l;
}

void BM_OffDiagFast(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = random_symmetric(static_cast<std::size_t>(state.range(0)), -5, 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(offdiag_rank(a).value);
}
BENCHMARK(BM_OffDiagFast)->Arg(6)->Arg(8)->Arg(12);

void BM_OffDiagOracle(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = random_symmetric(static_cast<std::size_t>(state.range(0)), -5, 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(offdiag_rank_oracle(a).value);
}
BENCHMARK(BM_OffDiagOracle)->Arg(6)->Arg(8);

void BM_DecomposeCase22(benchmark::State& state) {
  const auto g = generate_instance(FormKind::Case22, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(g.matrix));
}
BENCHMARK(BM_DecomposeCase22)->Arg(8)->Arg(11);

void BM_CountSolutions(benchmark::State& state) {
  const ProblemInstance inst{SymmetricIntMatrix::identity(3), 1001};
  const auto X = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_solutions(inst, X, single_thread()).unit_count);
}
BENCHMARK(BM_CountSolutions)->Arg(100)->Arg(400);

void BM_Histogram(benchmark::State& state) {
  const auto a = SymmetricIntMatrix::diagonal({1, 2, -3});
  const auto X = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(representation_histogram(a, X, Weights::Lambda, single_thread()).m.size());
}
BENCHMARK(BM_Histogram)->Arg(50)->Arg(150);

void BM_GaussSumDirect(benchmark::State& state) {
  const SymmetricIntMatrix a{{1, 2, 0, 1}, {2, -1, 1, 0}, {0, 1, 3, 1}, {1, 0, 1, 2}};
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum_direct(a, q, 1, single_thread()));
}
BENCHMARK(BM_GaussSumDirect)->Arg(15)->Arg(49);

void BM_GaussSumCrt(benchmark::State& state) {
  const SymmetricIntMatrix a{{1, 2, 0, 1}, {2, -1, 1, 0}, {0, 1, 3, 1}, {1, 0, 1, 2}};
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum(a, q, 1, single_thread()));
}
BENCHMARK(BM_GaussSumCrt)->Arg(15)->Arg(60);

void BM_MajorArcIntegral(benchmark::State& state) {
  const auto hist = representation_histogram(SymmetricIntMatrix::diagonal({1, 1, 1}), 100, Weights::Lambda);
  const auto arcs = build_arcs(100, 2);
  for (auto _ : state) benchmark::DoNotOptimize(major_arc_integral(hist, 1235, arcs).residual);
}
BENCHMARK(BM_MajorArcIntegral);

}  // namespace

BENCHMARK_MAIN();
