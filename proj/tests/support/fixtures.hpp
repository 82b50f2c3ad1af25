#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "nftcycles/graph.hpp"
#include "nftcycles/ingest.hpp"
#include "nftcycles/trade.hpp"

namespace testsupport {

// Four-trade toy: one NFT cycling A -> B -> C -> A over blocks 1..4 with
// one-day spacing. walletX is the original minter and never buys.
inline const char* kToyCsv =
    "tx_hash,block_number,timestamp,nft_id,collection,seller,buyer,price_usd\n"
    "0xa1,1,86400,nftB,toyset,walletX,walletA,100\n"
    "0xa2,2,172800,nftB,toyset,walletA,walletB,110\n"
    "0xa3,3,259200,nftB,toyset,walletB,walletC,120\n"
    "0xa4,4,345600,nftB,toyset,walletC,walletA,150\n";

inline std::vector<nftcycles::TradeRecord> toy_records() {
  std::istringstream in(kToyCsv);
  auto [records, report] = nftcycles::parse_trades_all(in, nftcycles::TradeFormat::kCsv);
  normalize_wallets(records);
  return records;
}

inline nftcycles::TemporalBipartiteGraph toy_graph(
    nftcycles::TemporalBipartiteGraph::Mode mode =
        nftcycles::TemporalBipartiteGraph::Mode::kLenient) {
  return nftcycles::build_graph(toy_records(), mode);
}

// Minimal record factory for hand-built paths.
inline nftcycles::TradeRecord trade(std::string tx, std::int64_t timestamp, std::string nft,
                                    std::string seller, std::string buyer,
                                    nftcycles::Money price_usd, std::uint64_t block = 0) {
  nftcycles::TradeRecord rec;
  rec.tx_id = std::move(tx);
  rec.block = block;
  rec.timestamp = timestamp;
  rec.nft_id = std::move(nft);
  rec.seller = std::move(seller);
  rec.buyer = std::move(buyer);
  rec.price_usd = price_usd;
  return rec;
}

// Buyer-chain path on one NFT: consecutive sellers match previous buyers,
// timestamps step by `spacing` starting at `t0`.
inline std::vector<nftcycles::TradeRecord> chain(const std::vector<std::string>& buyers,
                                                 std::int64_t t0 = 1000,
                                                 std::int64_t spacing = 100,
                                                 const std::string& nft = "nft0") {
  std::vector<nftcycles::TradeRecord> records;
  std::string owner = "origin";
  for (std::size_t i = 0; i < buyers.size(); ++i) {
    records.push_back(trade("tx" + std::to_string(i), t0 + std::int64_t(i) * spacing, nft, owner,
                            buyers[i], nftcycles::Money(1'000'000 + 10'000 * std::int64_t(i))));
    owner = buyers[i];
  }
  return records;
}

}  // namespace testsupport
