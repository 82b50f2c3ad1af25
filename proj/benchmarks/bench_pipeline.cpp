#include <benchmark/benchmark.h>

#include <sstream>

#include "nftcycles/analytics.hpp"
#include "nftcycles/cycles.hpp"
#include "nftcycles/graph.hpp"
#include "nftcycles/ingest.hpp"
#include "nftcycles/synth.hpp"

using namespace nftcycles;

namespace {

std::string make_corpus(std::uint64_t trades, int nfts, int wallets) {
  SynthConfig config;
  config.seed = 40;
  config.n_wallets = wallets;
  config.n_nfts = nfts;
  config.n_background_trades = trades;
  config.allow_buyer_reuse = true;
  RingSpec ring;
  ring.ring_size = 10;
  ring.nft_count = 4;
  ring.traversal_count = 20;
  config.rings.push_back(ring);
  std::ostringstream out;
  generate_corpus(config, out);
  return out.str();
}

std::vector<TradeRecord> records_for(const std::string& corpus) {
  std::istringstream in(corpus);
  auto [records, report] = parse_trades_all(in, TradeFormat::kCsv);
  normalize_wallets(records);
  return std::move(records);
}

void BM_ParseCsv(benchmark::State& state) {
  const std::string corpus = make_corpus(std::uint64_t(state.range(0)), 200, 2000);
  std::uint64_t bytes = 0;
  for (auto _ : state) {
    std::istringstream in(corpus);
    auto [records, report] = parse_trades_all(in, TradeFormat::kCsv);
    benchmark::DoNotOptimize(records);
    bytes += corpus.size();
  }
  state.SetBytesProcessed(std::int64_t(bytes));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParseCsv)->Arg(10000)->Arg(100000);

void BM_BuildGraph(benchmark::State& state) {
  const auto records = records_for(make_corpus(std::uint64_t(state.range(0)), 200, 2000));
  for (auto _ : state) {
    auto copy = records;
    auto graph = build_graph(std::move(copy), TemporalBipartiteGraph::Mode::kLenient);
    benchmark::DoNotOptimize(graph.trade_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildGraph)->Arg(10000)->Arg(100000);

void BM_CycleTable(benchmark::State& state) {
  auto records = records_for(make_corpus(std::uint64_t(state.range(0)), 200, 2000));
  auto graph = build_graph(std::move(records), TemporalBipartiteGraph::Mode::kLenient);
  for (auto _ : state) {
    auto cycles = cycle_table(graph, {.min_hops = 2, .threads = unsigned(state.range(1))});
    benchmark::DoNotOptimize(cycles);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CycleTable)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4});

void BM_TraderProfiles(benchmark::State& state) {
  auto records = records_for(make_corpus(std::uint64_t(state.range(0)), 200, 2000));
  auto graph = build_graph(std::move(records), TemporalBipartiteGraph::Mode::kLenient);
  auto cycles = cycle_table(graph, {.min_hops = 2});
  for (auto _ : state) {
    auto profiles = trader_profiles(cycles, graph);
    benchmark::DoNotOptimize(profiles);
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(cycles.size()));
}
BENCHMARK(BM_TraderProfiles)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
