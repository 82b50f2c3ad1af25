#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nftcycles/errors.hpp"
#include "nftcycles/trade.hpp"

namespace nftcycles {

struct PathEntry {
  std::string buyer;
  std::string seller;
  std::int64_t timestamp = 0;
  std::uint64_t block = 0;
  std::string tx_id;
  Money price_usd = 0;
};

// Time-ordered purchase list of one NFT. Entries are strictly increasing
// under (timestamp, block, tx_id); chain_breaks lists every index k >= 1
// where seller(k) != buyer(k-1).
struct OwnershipPath {
  std::string nft_id;
  std::vector<PathEntry> entries;
  std::vector<std::uint32_t> chain_breaks;

  // Half-open [begin, end) runs of seller-consistent entries. A path with no
  // breaks is a single segment; concatenating segments in order reproduces
  // the entries exactly.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> segments() const;
};

struct GraphStats {
  std::uint64_t nft_count = 0;
  std::uint64_t wallet_count = 0;  // wallets with at least one purchase
  std::uint64_t trade_count = 0;
  std::uint64_t chain_break_count = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> time_range;
};

// Immutable snapshot of all ownership paths plus a wallet-side purchase
// index. Safe to share across threads once built.
class TemporalBipartiteGraph {
 public:
  enum class Mode { kLenient, kStrictChain };

  struct PurchaseRef {
    std::uint32_t path_index = 0;
    std::uint32_t entry_index = 0;
  };

  // Paths sorted by nft_id; the vector index is the canonical NFT order.
  const std::vector<OwnershipPath>& paths() const { return paths_; }

  const OwnershipPath* find_path(std::string_view nft_id) const;

  // Throws NotFoundError for an unknown nft_id.
  const OwnershipPath& ownership_sequence(std::string_view nft_id) const;

  const std::vector<PurchaseRef>* purchases(std::string_view wallet) const;

  Mode mode() const { return mode_; }
  std::uint64_t trade_count() const { return trade_count_; }
  GraphStats stats() const;

 private:
  friend class GraphBuilder;

  std::vector<OwnershipPath> paths_;
  std::unordered_map<std::string, std::uint32_t> path_by_nft_;
  std::unordered_map<std::string, std::vector<PurchaseRef>> purchases_by_wallet_;
  Mode mode_ = Mode::kLenient;
  std::uint64_t trade_count_ = 0;
};

// Single-writer accumulator; finalize() sorts, validates and freezes.
class GraphBuilder {
 public:
  void add(TradeRecord&& record);
  TemporalBipartiteGraph finalize(TemporalBipartiteGraph::Mode mode);

 private:
  std::unordered_map<std::string, std::uint32_t> path_by_nft_;
  std::vector<OwnershipPath> paths_;
};

TemporalBipartiteGraph build_graph(std::vector<TradeRecord> records,
                                   TemporalBipartiteGraph::Mode mode);

// Canonical snapshot: ingest-schema CSV, rows grouped by nft_id in path
// order. Rebuilding from this export reproduces the graph bit for bit.
void export_canonical_csv(const TemporalBipartiteGraph& graph, std::ostream& out);

}  // namespace nftcycles
