#include "nftcycles/oracle.hpp"

#include <map>

namespace nftcycles::oracle {

namespace {

// (timestamp, block, tx_id) ascending, written out longhand rather than
// reusing the graph comparator.
bool comes_before(const TradeRecord& a, const TradeRecord& b) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  if (a.block != b.block) return a.block < b.block;
  return a.tx_id < b.tx_id;
}

void insertion_sort(std::vector<TradeRecord>& trades) {
  for (std::size_t i = 1; i < trades.size(); ++i) {
    TradeRecord key = trades[i];
    std::size_t j = i;
    while (j > 0 && comes_before(key, trades[j - 1])) {
      trades[j] = trades[j - 1];
      --j;
    }
    trades[j] = std::move(key);
  }
}

}  // namespace

std::set<OracleCycle> brute_force_cycles(const std::vector<TradeRecord>& records, int min_hops) {
  std::map<std::string, std::vector<TradeRecord>> by_nft;
  for (const auto& rec : records) by_nft[rec.nft_id].push_back(rec);

  std::set<OracleCycle> found;
  for (auto& [nft_id, trades] : by_nft) {
    insertion_sort(trades);

    std::map<std::string, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < trades.size(); ++i) {
      positions[trades[i].buyer].push_back(i);
    }
    for (const auto& [wallet, occurrences] : positions) {
      for (std::size_t k = 0; k + 1 < occurrences.size(); ++k) {
        std::size_t start = occurrences[k];
        std::size_t end = occurrences[k + 1];
        if (end - start >= std::size_t(min_hops)) {
          found.insert({nft_id, wallet, trades[start].tx_id, trades[end].tx_id});
        }
      }
    }
  }
  return found;
}

}  // namespace nftcycles::oracle
