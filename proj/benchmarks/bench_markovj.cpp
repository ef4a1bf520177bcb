#include "markovj/cycle_integral.hpp"
#include "markovj/evaluation.hpp"
#include "markovj/markov_tree.hpp"
#include "markovj/modular_j.hpp"

#include <benchmark/benchmark.h>

#include <complex>
#include <string>

using namespace markovj;

static void BM_JCoefficients(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(j_coefficients(order));
}
BENCHMARK(BM_JCoefficients)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

static void BM_JEval(benchmark::State& state) {
  const JSeries series = j_coefficients();
  const std::complex<double> z{0.3, 0.95};
  for (auto _ : state) benchmark::DoNotOptimize(j_eval(z, series));
}
BENCHMARK(BM_JEval);

static void BM_CycleStates(benchmark::State& state) {
  const Period p = period_of_node(std::string(static_cast<std::size_t>(state.range(0)), 'L') + "RLR");
  for (auto _ : state) benchmark::DoNotOptimize(cycle_states(p));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(p.size()));
}
BENCHMARK(BM_CycleStates)->RangeMultiplier(2)->Range(2, 64)->Complexity();

static void BM_IntegrateJ(benchmark::State& state) {
  const JSeries series = j_coefficients();
  const TreeNode node = node_at_path(std::string(static_cast<std::size_t>(state.range(0)), 'R'));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_J(node, series));
}
BENCHMARK(BM_IntegrateJ)->DenseRange(1, 11, 2)->Unit(benchmark::kMicrosecond);

static void BM_BuildTree(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MarkovTree(depth));
}
BENCHMARK(BM_BuildTree)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_EvaluateTree(benchmark::State& state) {
  const JSeries series = j_coefficients();
  const MarkovTree tree(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_tree(tree, series, kDefaultQuadTol));
}
BENCHMARK(BM_EvaluateTree)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
