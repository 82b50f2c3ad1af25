#pragma once

#include <cstdint>
#include <string>

#include "nftcycles/money.hpp"

namespace nftcycles {

// One purchase event. block == 0 means the block number is unknown;
// ordering then falls back to (timestamp, tx_id).
struct TradeRecord {
  std::string tx_id;
  std::uint64_t block = 0;
  std::int64_t timestamp = 0;  // Unix seconds, UTC
  std::string nft_id;
  std::string collection;  // carried through, unused by the core algorithms
  std::string seller;      // may be empty (mint / unknown origin)
  std::string buyer;
  Money price_usd = 0;

  bool operator==(const TradeRecord&) const = default;
};

// Latest representable timestamp: 9999-12-31T23:59:59Z.
inline constexpr std::int64_t kMaxTimestamp = 253402300799;

}  // namespace nftcycles
