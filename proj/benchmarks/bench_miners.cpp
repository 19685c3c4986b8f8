#include <benchmark/benchmark.h>

#include "arminer/apriori.hpp"
#include "arminer/bench.hpp"
#include "arminer/fpgrowth.hpp"

namespace {

using namespace arminer;

// Args: n_transactions, mean_len. 30 items, skew 0.5, min_support 1% of n.
TransactionDb dataset(const benchmark::State& state) {
  bench::SynthParams p;
  p.n_transactions = static_cast<std::size_t>(state.range(0));
  p.n_items = 30;
  p.mean_len = static_cast<double>(state.range(1));
  p.skew = 0.5;
  return bench::generate_synthetic(p);
}

Count threshold(const TransactionDb& db) { return bench::Threshold{true, 1, 0.01}.resolve(db.size()); }

void BM_Apriori(benchmark::State& state) {
  const TransactionDb db = dataset(state);
  const Count s = threshold(db);
  std::size_t found = 0;
  for (auto _ : state) {
    const auto freq = apriori_mine(db, s);
    found = freq.size();
    benchmark::DoNotOptimize(found);
  }
  state.counters["frequent"] = static_cast<double>(found);
}

void BM_FPGrowth(benchmark::State& state) {
  const TransactionDb db = dataset(state);
  const Count s = threshold(db);
  std::size_t found = 0;
  for (auto _ : state) {
    const auto freq = fpgrowth_mine(db, s);
    found = freq.size();
    benchmark::DoNotOptimize(found);
  }
  state.counters["frequent"] = static_cast<double>(found);
}

void BM_BuildTree(benchmark::State& state) {
  const TransactionDb db = dataset(state);
  const Count s = threshold(db);
  for (auto _ : state) {
    const FPTree tree = build_fptree(db, s);
    benchmark::DoNotOptimize(tree.node_count());
  }
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int len : {4, 6, 9}) b->Args({5000, len});
  b->Args({20000, 6});
  b->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_Apriori)->Apply(sizes);
BENCHMARK(BM_FPGrowth)->Apply(sizes);
BENCHMARK(BM_BuildTree)->Apply(sizes);

}  // namespace

BENCHMARK_MAIN();
