#include <doctest.h>

#include <algorithm>
#include <random>

#include "nftcycles/cycles.hpp"
#include "nftcycles/oracle.hpp"
#include "nftcycles/synth.hpp"
#include "support/fixtures.hpp"

using namespace nftcycles;

namespace {

std::set<oracle::OracleCycle> fast_path_set(const std::vector<TradeRecord>& records,
                                            int min_hops) {
  auto graph = build_graph(records, TemporalBipartiteGraph::Mode::kLenient);
  std::set<oracle::OracleCycle> out;
  for (const Cycle& c : cycle_table(graph, {.min_hops = min_hops})) {
    out.insert({c.nft_id, c.wallet, c.start_tx, c.end_tx});
  }
  return out;
}

}  // namespace

TEST_CASE("oracle finds the toy cycle") {
  auto brute = oracle::brute_force_cycles(testsupport::toy_records(), 1);
  REQUIRE(brute.size() == 1);
  const auto& c = *brute.begin();
  CHECK(c.nft_id == "nftB");
  CHECK(c.wallet == "walleta");
  CHECK(c.start_tx == "0xa1");
  CHECK(c.end_tx == "0xa4");
}

TEST_CASE("oracle is empty without repeated buyers") {
  CHECK(oracle::brute_force_cycles(testsupport::chain({"a", "b", "c"}), 1).empty());
  CHECK(oracle::brute_force_cycles({}, 1).empty());
}

TEST_CASE("oracle ordering is input-order independent") {
  std::mt19937_64 rng(404);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto records = random_instance(seed, 10, 4, 50);
    auto expected = oracle::brute_force_cycles(records, 1);
    std::shuffle(records.begin(), records.end(), rng);
    CHECK(oracle::brute_force_cycles(records, 1) == expected);
  }
}

TEST_CASE("fast path equals the oracle on 200 seeded instances") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto records = random_instance(seed, 12, 5, 60);
    normalize_wallets(records);
    for (int min_hops : {1, 2}) {
      CAPTURE(seed);
      CAPTURE(min_hops);
      CHECK(fast_path_set(records, min_hops) ==
            oracle::brute_force_cycles(records, min_hops));
    }
  }
}
