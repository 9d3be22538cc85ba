#include <benchmark/benchmark.h>

#include "freedyn/freedyn.hpp"

using namespace freedyn;

namespace {

Endomorphism endo(int rank, std::vector<std::string_view> ws) {
  const Basis b(rank);
  std::vector<Word> out;
  for (auto s : ws) out.push_back(reduce(s, b));
  return Endomorphism(b, std::move(out));
}

const Endomorphism kTm = endo(2, {"ab", "ba"});

void BM_Reduce(benchmark::State& state) {
  Rng rng(1);
  std::uniform_int_distribution<int> pick(0, 3);
  const auto alphabet = Basis(2).alphabet();
  std::vector<Letter> seq(static_cast<std::size_t>(state.range(0)));
  for (auto& x : seq) x = alphabet[static_cast<std::size_t>(pick(rng))];
  for (auto _ : state) benchmark::DoNotOptimize(Word::reduce(seq));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Reduce)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_ApplyPower(benchmark::State& state) {
  const auto phi = power(kTm, static_cast<int>(state.range(0)));
  const Word w = reduce("abAB", Basis(2));
  for (auto _ : state) benchmark::DoNotOptimize(apply(phi, w));
}
BENCHMARK(BM_ApplyPower)->DenseRange(4, 12, 4);

void BM_SubgroupGraph(benchmark::State& state) {
  Rng rng(2);
  std::vector<Word> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(random_word(3, static_cast<std::size_t>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(subgroup_graph(gens, 3));
}
BENCHMARK(BM_SubgroupGraph)->RangeMultiplier(4)->Range(8, 512);

void BM_FoldToImmersion(benchmark::State& state) {
  const auto f = rose_map(endo(2, {"BAabab", "BAbaab"}));
  for (auto _ : state) benchmark::DoNotOptimize(fold_to_immersion(f));
}
BENCHMARK(BM_FoldToImmersion);

void BM_PfData(benchmark::State& state) {
  const auto m = transition_matrix(rose_map(power(endo(3, {"ab", "bc", "ca"}), 3)));
  for (auto _ : state) benchmark::DoNotOptimize(pf_data(m));
}
BENCHMARK(BM_PfData);

void BM_OrbitStep(benchmark::State& state) {
  const TreePoint t = rose_tree({1.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(right_action(t, kTm));
}
BENCHMARK(BM_OrbitStep);

void BM_OrbitConverge(benchmark::State& state) {
  const auto s = stable_tree(kTm);
  const TreePoint t = rose_tree({1.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(orbit_converge(t, s));
}
BENCHMARK(BM_OrbitConverge);

void BM_Eigenray(benchmark::State& state) {
  const auto f = rose_map(kTm);
  for (auto _ : state) benchmark::DoNotOptimize(eigenray(f, 0, 1, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Eigenray)->RangeMultiplier(8)->Range(8, 4096);

void BM_Homothety(benchmark::State& state) {
  const auto s = stable_tree(kTm);
  for (auto _ : state) benchmark::DoNotOptimize(homothety_check(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Homothety)->DenseRange(3, 5);

}  // namespace

BENCHMARK_MAIN();
