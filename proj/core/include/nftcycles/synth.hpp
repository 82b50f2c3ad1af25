#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nftcycles/money.hpp"
#include "nftcycles/trade.hpp"

namespace nftcycles {

// One injected wash-trade ring: ring_size wallets rotating nft_count NFTs
// for traversal_count full loops, one trade every period +/- jitter seconds.
// band_hit_ratio controls how many inter-trade deltas land inside
// [period - jitter, period + jitter]; the rest are pushed well outside
// (beyond period +/- 2*jitter) so a measured band between those margins
// sees exactly the planted ratio.
struct RingSpec {
  int ring_size = 2;
  int nft_count = 1;
  int traversal_count = 1;
  std::int64_t period_seconds = 14400;  // 4 h
  std::int64_t jitter_seconds = 1800;   // +/- 0.5 h
  Money price_base_usd = 10 * kMoneyScale;
  Money price_step_usd = 50'000;  // 5 cents per trade, may be negative
  double band_hit_ratio = 1.0;
};

struct SynthConfig {
  std::uint64_t seed = 1;
  int n_wallets = 100;  // background wallet pool, disjoint from ring wallets
  int n_nfts = 10;      // background NFTs, disjoint from ring NFTs
  std::uint64_t n_background_trades = 0;
  std::int64_t start_time = 1'500'000'000;
  std::int64_t horizon_seconds = 365LL * 86400;
  std::vector<RingSpec> rings;
  // Background never repeats a buyer within one NFT unless this is set, so
  // the background cycle count is controllable.
  bool allow_buyer_reuse = false;
  // Randomizes the letter case of wallet addresses in the emitted file;
  // normalization collapses the variants back to one wallet.
  bool randomize_wallet_case = false;
  // Corrupts this many background rows in the emitted CSV (cycling through
  // a negative price, a bad timestamp, and a missing buyer).
  std::uint64_t corrupt_rows = 0;
  // Fraction of background trades redirected onto ring NFTs.
  double contamination_rate = 0.0;
};

struct RingTruth {
  int ring_id = 0;
  std::vector<std::string> wallets;
  std::vector<std::string> nft_ids;
  // Counting per wallet per NFT: traversal_count occurrences pair into
  // traversal_count - 1 consecutive recurrences, each ring_size hops long.
  std::uint64_t expected_cycles_per_wallet = 0;
  std::uint64_t expected_cycles_per_nft = 0;
  std::int64_t band_lo_seconds = 0;
  std::int64_t band_hi_seconds = 0;
  double band_hit_ratio = 1.0;
};

struct GroundTruth {
  std::vector<RingTruth> rings;
  std::uint64_t background_trades = 0;
  std::uint64_t corrupted_rows = 0;
  std::uint64_t total_rows = 0;
};

// Writes an ingest-format CSV corpus (sorted by timestamp, ties by tx_id)
// and, when labels_out is given, a labels.csv with header
// "wallet,ring_id,expected_cycles". Identical seed and config produce
// identical bytes. Throws ConfigError on infeasible parameters.
GroundTruth generate_corpus(const SynthConfig& config, std::ostream& trades_out,
                            std::ostream* labels_out = nullptr);

inline constexpr std::string_view kLabelsCsvHeader = "wallet,ring_id,expected_cycles";

// Small adversarial instance for oracle comparison: dense timestamp ties,
// missing block numbers, buyers that repeat and occasionally buy from
// themselves. Records satisfy all TradeRecord invariants.
std::vector<TradeRecord> random_instance(std::uint64_t seed, int max_wallets, int max_nfts,
                                         int max_trades);

}  // namespace nftcycles
