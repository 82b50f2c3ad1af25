#include "nftcycles/graph.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>
#include <unordered_set>

#include "nftcycles/ingest.hpp"

namespace nftcycles {

std::vector<std::pair<std::uint32_t, std::uint32_t>> OwnershipPath::segments() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const auto n = std::uint32_t(entries.size());
  if (n == 0) return out;
  std::uint32_t begin = 0;
  for (std::uint32_t brk : chain_breaks) {
    out.emplace_back(begin, brk);
    begin = brk;
  }
  out.emplace_back(begin, n);
  return out;
}

const OwnershipPath* TemporalBipartiteGraph::find_path(std::string_view nft_id) const {
  auto it = path_by_nft_.find(std::string(nft_id));
  return it == path_by_nft_.end() ? nullptr : &paths_[it->second];
}

const OwnershipPath& TemporalBipartiteGraph::ownership_sequence(std::string_view nft_id) const {
  const OwnershipPath* path = find_path(nft_id);
  if (!path) throw NotFoundError("unknown nft_id: " + std::string(nft_id));
  return *path;
}

const std::vector<TemporalBipartiteGraph::PurchaseRef>* TemporalBipartiteGraph::purchases(
    std::string_view wallet) const {
  auto it = purchases_by_wallet_.find(std::string(wallet));
  return it == purchases_by_wallet_.end() ? nullptr : &it->second;
}

GraphStats TemporalBipartiteGraph::stats() const {
  GraphStats s;
  s.nft_count = paths_.size();
  s.wallet_count = purchases_by_wallet_.size();
  s.trade_count = trade_count_;
  for (const auto& path : paths_) {
    s.chain_break_count += path.chain_breaks.size();
    for (const auto& entry : path.entries) {
      if (s.time_range) {
        s.time_range->first = std::min(s.time_range->first, entry.timestamp);
        s.time_range->second = std::max(s.time_range->second, entry.timestamp);
      } else {
        s.time_range = {entry.timestamp, entry.timestamp};
      }
    }
  }
  return s;
}

void GraphBuilder::add(TradeRecord&& record) {
  if (record.timestamp < 0 || record.timestamp > kMaxTimestamp) {
    throw GraphError("timestamp out of range for tx " + record.tx_id + ": " +
                     std::to_string(record.timestamp));
  }
  auto [it, inserted] = path_by_nft_.try_emplace(record.nft_id, std::uint32_t(paths_.size()));
  if (inserted) {
    paths_.emplace_back();
    paths_.back().nft_id = record.nft_id;
  }
  PathEntry entry;
  entry.buyer = std::move(record.buyer);
  entry.seller = std::move(record.seller);
  entry.timestamp = record.timestamp;
  entry.block = record.block;
  entry.tx_id = std::move(record.tx_id);
  entry.price_usd = record.price_usd;
  paths_[it->second].entries.push_back(std::move(entry));
}

TemporalBipartiteGraph GraphBuilder::finalize(TemporalBipartiteGraph::Mode mode) {
  TemporalBipartiteGraph graph;
  graph.mode_ = mode;
  graph.paths_ = std::move(paths_);
  paths_.clear();
  path_by_nft_.clear();

  // Canonical NFT order, then canonical entry order within each path.
  std::sort(graph.paths_.begin(), graph.paths_.end(),
            [](const OwnershipPath& a, const OwnershipPath& b) { return a.nft_id < b.nft_id; });

  std::unordered_set<std::string_view> seen_tx;
  for (std::uint32_t pi = 0; pi < graph.paths_.size(); ++pi) {
    OwnershipPath& path = graph.paths_[pi];
    graph.path_by_nft_.emplace(path.nft_id, pi);

    std::sort(path.entries.begin(), path.entries.end(),
              [](const PathEntry& a, const PathEntry& b) {
                return std::tie(a.timestamp, a.block, a.tx_id) <
                       std::tie(b.timestamp, b.block, b.tx_id);
              });

    seen_tx.clear();
    seen_tx.reserve(path.entries.size());
    for (const auto& entry : path.entries) {
      if (!seen_tx.insert(entry.tx_id).second) {
        throw GraphError("duplicate (nft_id, tx_id) pair: (" + path.nft_id + ", " + entry.tx_id +
                         ")");
      }
    }

    for (std::uint32_t k = 1; k < path.entries.size(); ++k) {
      if (path.entries[k].seller != path.entries[k - 1].buyer) {
        path.chain_breaks.push_back(k);
      }
    }

    for (std::uint32_t ei = 0; ei < path.entries.size(); ++ei) {
      graph.purchases_by_wallet_[path.entries[ei].buyer].push_back({pi, ei});
    }
    graph.trade_count_ += path.entries.size();
  }
  return graph;
}

TemporalBipartiteGraph build_graph(std::vector<TradeRecord> records,
                                   TemporalBipartiteGraph::Mode mode) {
  GraphBuilder builder;
  for (auto& rec : records) builder.add(std::move(rec));
  return builder.finalize(mode);
}

void export_canonical_csv(const TemporalBipartiteGraph& graph, std::ostream& out) {
  out << kTradeCsvHeader << '\n';
  TradeRecord rec;
  for (const auto& path : graph.paths()) {
    for (const auto& entry : path.entries) {
      rec.tx_id = entry.tx_id;
      rec.block = entry.block;
      rec.timestamp = entry.timestamp;
      rec.nft_id = path.nft_id;
      rec.collection.clear();
      rec.seller = entry.seller;
      rec.buyer = entry.buyer;
      rec.price_usd = entry.price_usd;
      out << canonical_csv_row(rec) << '\n';
    }
  }
}

}  // namespace nftcycles
