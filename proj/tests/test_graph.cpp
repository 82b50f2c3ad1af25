#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "nftcycles/errors.hpp"
#include "nftcycles/graph.hpp"
#include "nftcycles/synth.hpp"
#include "support/fixtures.hpp"

using namespace nftcycles;
using testsupport::chain;
using testsupport::trade;

namespace {

std::vector<std::string> buyer_sequence(const OwnershipPath& path) {
  std::vector<std::string> buyers;
  for (const auto& e : path.entries) buyers.push_back(e.buyer);
  return buyers;
}

std::string export_text(const TemporalBipartiteGraph& graph) {
  std::ostringstream out;
  export_canonical_csv(graph, out);
  return out.str();
}

}  // namespace

TEST_CASE("toy graph has the expected shape") {
  auto graph = testsupport::toy_graph();
  const OwnershipPath& path = graph.ownership_sequence("nftB");
  CHECK(buyer_sequence(path) ==
        std::vector<std::string>{"walleta", "walletb", "walletc", "walleta"});
  CHECK(path.chain_breaks.empty());

  GraphStats stats = graph.stats();
  CHECK(stats.nft_count == 1);
  CHECK(stats.wallet_count == 3);  // walletX only sells
  CHECK(stats.trade_count == 4);
  CHECK(stats.chain_break_count == 0);
  CHECK(stats.time_range == std::pair<std::int64_t, std::int64_t>{86400, 345600});
}

TEST_CASE("empty input yields an empty graph") {
  auto graph = build_graph({}, TemporalBipartiteGraph::Mode::kLenient);
  GraphStats stats = graph.stats();
  CHECK(stats.nft_count == 0);
  CHECK(stats.wallet_count == 0);
  CHECK(stats.trade_count == 0);
  CHECK_FALSE(stats.time_range.has_value());
}

TEST_CASE("composite key ordering") {
  SUBCASE("same timestamp orders by block") {
    auto graph = build_graph({trade("t7", 100, "n", "s", "b1", 1, 7),
                              trade("t5", 100, "n", "s", "b2", 1, 5)},
                             TemporalBipartiteGraph::Mode::kLenient);
    const auto& entries = graph.ownership_sequence("n").entries;
    CHECK(entries[0].block == 5);
    CHECK(entries[1].block == 7);
  }
  SUBCASE("same timestamp and block orders by tx_id") {
    auto graph = build_graph({trade("tb", 100, "n", "s", "b1", 1, 5),
                              trade("ta", 100, "n", "s", "b2", 1, 5)},
                             TemporalBipartiteGraph::Mode::kLenient);
    const auto& entries = graph.ownership_sequence("n").entries;
    CHECK(entries[0].tx_id == "ta");
    CHECK(entries[1].tx_id == "tb");
  }
}

TEST_CASE("duplicate (nft_id, tx_id) is rejected with both names") {
  std::vector<TradeRecord> records = {trade("tx1", 100, "nftZ", "s", "b1", 1),
                                      trade("tx1", 200, "nftZ", "s", "b2", 1)};
  try {
    build_graph(std::move(records), TemporalBipartiteGraph::Mode::kLenient);
    FAIL("expected GraphError");
  } catch (const GraphError& e) {
    std::string message = e.what();
    CHECK(message.find("nftZ") != std::string::npos);
    CHECK(message.find("tx1") != std::string::npos);
  }
}

TEST_CASE("same tx_id on different NFTs is fine") {
  CHECK_NOTHROW(build_graph({trade("tx1", 100, "n1", "s", "b", 1),
                             trade("tx1", 100, "n2", "s", "b", 1)},
                            TemporalBipartiteGraph::Mode::kLenient));
}

TEST_CASE("out-of-range timestamp is rejected") {
  TradeRecord rec = trade("t", 0, "n", "s", "b", 1);
  rec.timestamp = kMaxTimestamp + 1;
  GraphBuilder builder;
  CHECK_THROWS_AS(builder.add(std::move(rec)), GraphError);
}

TEST_CASE("unknown nft lookups") {
  auto graph = testsupport::toy_graph();
  CHECK_THROWS_AS(graph.ownership_sequence("nope"), NotFoundError);
  CHECK(graph.find_path("nope") == nullptr);
}

TEST_CASE("single-trade path") {
  auto graph = build_graph({trade("t", 1, "n", "s", "b", 1)},
                           TemporalBipartiteGraph::Mode::kLenient);
  CHECK(graph.ownership_sequence("n").entries.size() == 1);
  CHECK(graph.ownership_sequence("n").chain_breaks.empty());
}

TEST_CASE("chain breaks are exactly the continuity violations") {
  // buyers: a, b, c with sellers: m, a, x -> break only at index 2
  std::vector<TradeRecord> records = {trade("t0", 100, "n", "m", "a", 1),
                                      trade("t1", 200, "n", "a", "b", 1),
                                      trade("t2", 300, "n", "x", "c", 1)};
  auto graph = build_graph(std::move(records), TemporalBipartiteGraph::Mode::kLenient);
  const auto& path = graph.ownership_sequence("n");
  CHECK(path.chain_breaks == std::vector<std::uint32_t>{2});

  auto segments = path.segments();
  REQUIRE(segments.size() == 2);
  CHECK(segments[0] == std::pair<std::uint32_t, std::uint32_t>{0, 2});
  CHECK(segments[1] == std::pair<std::uint32_t, std::uint32_t>{2, 3});

  // Concatenating segments reproduces the path.
  std::size_t covered = 0;
  for (auto [begin, end] : segments) {
    CHECK(begin == covered);
    covered = end;
  }
  CHECK(covered == path.entries.size());
}

TEST_CASE("strict_chain and lenient store identical paths") {
  auto records = testsupport::toy_records();
  auto lenient = build_graph(records, TemporalBipartiteGraph::Mode::kLenient);
  auto strict = build_graph(records, TemporalBipartiteGraph::Mode::kStrictChain);
  CHECK(export_text(lenient) == export_text(strict));
  CHECK(strict.mode() == TemporalBipartiteGraph::Mode::kStrictChain);
}

TEST_CASE("purchase references resolve to matching buyers") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto records = random_instance(seed, 10, 4, 50);
    auto graph = build_graph(records, TemporalBipartiteGraph::Mode::kLenient);

    std::uint64_t path_total = 0;
    for (const auto& path : graph.paths()) path_total += path.entries.size();
    CHECK(path_total == graph.trade_count());
    CHECK(graph.trade_count() == records.size());

    // Every entry is reachable through its buyer's purchase list, and every
    // reference resolves to an entry bought by that wallet.
    for (const auto& path : graph.paths()) {
      for (const auto& entry : path.entries) {
        const auto* refs = graph.purchases(entry.buyer);
        REQUIRE(refs != nullptr);
        bool found = false;
        for (const auto& ref : *refs) {
          const auto& target = graph.paths()[ref.path_index].entries[ref.entry_index];
          CHECK(target.buyer == entry.buyer);
          if (&target == &entry) found = true;
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("rebuild from shuffled records is identical") {
  std::mt19937_64 rng(31337);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto records = random_instance(seed, 12, 5, 60);
    auto graph = build_graph(records, TemporalBipartiteGraph::Mode::kLenient);
    std::shuffle(records.begin(), records.end(), rng);
    auto shuffled = build_graph(records, TemporalBipartiteGraph::Mode::kLenient);
    CHECK(export_text(graph) == export_text(shuffled));
  }
}

TEST_CASE("canonical export rebuilds bit-identically") {
  SynthConfig config;
  config.seed = 3;
  config.n_wallets = 40;
  config.n_nfts = 6;
  config.n_background_trades = 300;
  config.allow_buyer_reuse = true;
  std::ostringstream corpus;
  generate_corpus(config, corpus);
  std::istringstream in(corpus.str());
  auto [records, report] = parse_trades_all(in, TradeFormat::kCsv);
  auto graph = build_graph(std::move(records), TemporalBipartiteGraph::Mode::kLenient);

  std::string snapshot = export_text(graph);
  std::istringstream again(snapshot);
  auto [records2, report2] = parse_trades_all(again, TradeFormat::kCsv);
  CHECK(report2.records_rejected == 0);
  auto rebuilt = build_graph(std::move(records2), TemporalBipartiteGraph::Mode::kLenient);
  CHECK(export_text(rebuilt) == snapshot);
  CHECK(rebuilt.stats().trade_count == graph.stats().trade_count);
  CHECK(rebuilt.stats().wallet_count == graph.stats().wallet_count);
}

TEST_CASE("synthetic ring path matches the generator emission order") {
  SynthConfig config;
  config.seed = 21;
  RingSpec ring;
  ring.ring_size = 5;
  ring.nft_count = 1;
  ring.traversal_count = 10;  // 50 trades on one NFT
  config.rings.push_back(ring);
  std::ostringstream corpus;
  GroundTruth truth = generate_corpus(config, corpus);

  std::istringstream in(corpus.str());
  auto [records, report] = parse_trades_all(in, TradeFormat::kCsv);
  REQUIRE(records.size() == 50);
  auto graph = build_graph(std::move(records), TemporalBipartiteGraph::Mode::kLenient);
  const auto& path = graph.ownership_sequence(truth.rings[0].nft_ids[0]);
  REQUIRE(path.entries.size() == 50);
  CHECK(path.chain_breaks.empty());

  const auto& wallets = truth.rings[0].wallets;
  for (std::size_t i = 0; i < path.entries.size(); ++i) {
    CHECK(path.entries[i].buyer == wallets[(i + 1) % wallets.size()]);
  }
}
