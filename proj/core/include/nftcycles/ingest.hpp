#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nftcycles/errors.hpp"
#include "nftcycles/trade.hpp"

namespace nftcycles {

enum class TradeFormat { kCsv, kJsonl };

// Per-row rejection categories. Rejections never abort a run unless
// ParseOptions::strict is set.
enum class RejectReason { kBadField, kMissingField, kNegativePrice, kBadTimestamp };

std::string_view reject_reason_name(RejectReason reason);

struct IngestReport {
  std::uint64_t records_accepted = 0;
  std::uint64_t records_rejected = 0;
  std::map<std::string, std::uint64_t> rejection_reasons;
  // (min, max) timestamp over accepted records; empty iff none accepted.
  std::optional<std::pair<std::int64_t, std::int64_t>> time_range;
};

struct ParseOptions {
  bool strict = false;  // upgrade any rejection to IngestError
};

inline constexpr std::string_view kTradeCsvHeader =
    "tx_hash,block_number,timestamp,nft_id,collection,seller,buyer,price_usd";

// Streams records out of a CSV or JSONL source in input order. Malformed rows
// are counted by reason; a malformed CSV header or non-UTF-8 bytes throw
// IngestError. The sink is invoked once per accepted record.
IngestReport parse_trades(std::istream& source, TradeFormat format,
                          const std::function<void(TradeRecord&&)>& sink,
                          const ParseOptions& options = {});

// Convenience wrapper collecting the stream into a vector.
std::pair<std::vector<TradeRecord>, IngestReport> parse_trades_all(
    std::istream& source, TradeFormat format, const ParseOptions& options = {});

// Lower-cases and trims wallet addresses so identical addresses compare
// equal. Idempotent.
void normalize_wallets(TradeRecord& record);
void normalize_wallets(std::vector<TradeRecord>& records);

// One canonical CSV data row (no trailing newline). Canonical means minimal
// quoting and canonical money rendering; parsing a canonical row and
// re-serializing it reproduces the row byte for byte.
std::string canonical_csv_row(const TradeRecord& record);

}  // namespace nftcycles
