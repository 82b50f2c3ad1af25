#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nftcycles/graph.hpp"
#include "nftcycles/money.hpp"

namespace nftcycles {

// One wallet recurrence on one NFT's ownership path. Indexes refer to the
// full path regardless of mode, so a cycle row can always be resolved
// against the lenient path.
struct Cycle {
  std::string nft_id;
  std::string wallet;
  std::uint32_t start_index = 0;
  std::uint32_t end_index = 0;
  std::string start_tx;
  std::string end_tx;
  std::int64_t start_time = 0;
  std::int64_t end_time = 0;
  std::int64_t duration_seconds = 0;
  std::uint32_t hop_length = 0;
  std::uint32_t unique_wallets = 0;
  // Price of the trade that took the NFT away from the wallet (entry
  // start_index + 1) and of the trade that brought it back (entry
  // end_index). appreciation = repurchase - sold, signed, exact.
  Money sold_price_usd = 0;
  Money repurchase_price_usd = 0;
  Money appreciation_usd = 0;
  bool is_self_transfer = false;  // hop_length == 1, i.e. seller == buyer
  bool spans_break = false;       // some chain break lies inside (start, end]

  bool operator==(const Cycle&) const = default;
};

// Scans the buyer sequence and emits one cycle per consecutive occurrence
// pair of the same wallet with index gap >= min_hops, sorted by
// (start_index, wallet). With respect_chain_breaks, occurrences are paired
// only within one seller-consistent segment and no cycle spans a break.
std::vector<Cycle> extract_cycles(const OwnershipPath& path, int min_hops,
                                  bool respect_chain_breaks = false);

struct CycleTableOptions {
  int min_hops = 2;  // 1-hop recurrences are self-transfers, off by default
  bool appreciating_only = false;
  unsigned threads = 0;  // 0 = available parallelism
};

// All cycles across the graph, sorted by (nft_id, start_index, wallet);
// identical output for every thread count. Honors the graph's mode.
std::vector<Cycle> cycle_table(const TemporalBipartiteGraph& graph,
                               const CycleTableOptions& options = {});

inline constexpr std::string_view kCyclesCsvHeader =
    "nft_id,wallet,start_index,end_index,start_tx,end_tx,start_time,end_time,"
    "duration_seconds,hop_length,unique_wallets,sold_price_usd,repurchase_price_usd,"
    "appreciation_usd,is_self_transfer,spans_break";

void write_cycles_csv(std::ostream& out, std::span<const Cycle> cycles);

// Throws IngestError on a malformed header or row.
std::vector<Cycle> read_cycles_csv(std::istream& in);

}  // namespace nftcycles
