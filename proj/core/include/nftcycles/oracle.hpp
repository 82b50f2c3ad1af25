#pragma once

#include <set>
#include <string>
#include <vector>

#include "nftcycles/trade.hpp"

namespace nftcycles::oracle {

struct OracleCycle {
  std::string nft_id;
  std::string wallet;
  std::string start_tx;
  std::string end_tx;

  auto operator<=>(const OracleCycle&) const = default;
};

// Brute-force reference: re-derives wallet recurrences straight from raw
// trade lists, with its own grouping, ordering, and pairing code. Shares
// nothing with the graph or cycles modules on purpose; meant for small
// instances only.
std::set<OracleCycle> brute_force_cycles(const std::vector<TradeRecord>& records, int min_hops);

}  // namespace nftcycles::oracle
