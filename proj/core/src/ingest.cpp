#include "nftcycles/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>

#include <nlohmann/json.hpp>

namespace nftcycles {

namespace {

using json = nlohmann::json;

bool utf8_valid(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t extra;
    unsigned cp_min;
    if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp_min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp_min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp_min = 0x10000;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    unsigned cp = c & (0x3F >> extra);
    for (std::size_t k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < cp_min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += extra + 1;
  }
  return true;
}

// RFC4180-style split; a field starting with '"' is quoted, "" escapes a
// quote. Returns false on an unterminated quote or junk after a close quote.
bool split_csv_fields(std::string_view line, std::vector<std::string>& out) {
  out.clear();
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (true) {
    std::string field;
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        char c = line[i];
        if (c == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          field.push_back(c);
          ++i;
        }
      }
      if (!closed) return false;
      if (i < n && line[i] != ',') return false;
    } else {
      std::size_t comma = line.find(',', i);
      if (comma == std::string_view::npos) comma = n;
      field.assign(line, i, comma - i);
      i = comma;
    }
    out.push_back(std::move(field));
    if (i >= n) return true;
    ++i;  // skip comma; a trailing comma yields a final empty field
  }
}

bool needs_quoting(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_csv_field(std::string& out, std::string_view field) {
  if (!needs_quoting(field)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct RowError {
  RejectReason reason;
};

// Field-level checks shared by both formats. Throws RowError on rejection.
TradeRecord make_record(std::string&& tx_id, std::string_view block_text,
                        std::string_view timestamp_text, std::string&& nft_id,
                        std::string&& collection, std::string&& seller, std::string&& buyer,
                        std::string_view price_text) {
  TradeRecord rec;
  if (tx_id.empty()) throw RowError{RejectReason::kMissingField};
  rec.tx_id = std::move(tx_id);

  if (block_text.empty()) {
    rec.block = 0;
  } else if (!parse_uint(block_text, rec.block)) {
    throw RowError{RejectReason::kBadField};
  }

  if (timestamp_text.empty()) throw RowError{RejectReason::kMissingField};
  std::uint64_t ts = 0;
  if (!parse_uint(timestamp_text, ts) || ts > std::uint64_t(kMaxTimestamp)) {
    throw RowError{RejectReason::kBadTimestamp};
  }
  rec.timestamp = std::int64_t(ts);

  if (nft_id.empty()) throw RowError{RejectReason::kMissingField};
  rec.nft_id = std::move(nft_id);
  rec.collection = std::move(collection);
  rec.seller = std::move(seller);

  if (buyer.empty()) throw RowError{RejectReason::kMissingField};
  rec.buyer = std::move(buyer);

  if (price_text.empty()) throw RowError{RejectReason::kMissingField};
  auto price = parse_money(price_text);
  if (!price) throw RowError{RejectReason::kBadField};
  if (*price < 0) throw RowError{RejectReason::kNegativePrice};
  rec.price_usd = *price;
  return rec;
}

TradeRecord parse_csv_row(std::string_view line, std::vector<std::string>& fields) {
  if (!split_csv_fields(line, fields)) throw RowError{RejectReason::kBadField};
  if (fields.size() < 8) throw RowError{RejectReason::kMissingField};
  if (fields.size() > 8) throw RowError{RejectReason::kBadField};
  return make_record(std::move(fields[0]), fields[1], fields[2], std::move(fields[3]),
                     std::move(fields[4]), std::move(fields[5]), std::move(fields[6]), fields[7]);
}

std::string json_string_or_throw(const json& obj, const char* key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw RowError{RejectReason::kMissingField};
    return {};
  }
  if (!it->is_string()) throw RowError{RejectReason::kBadField};
  return it->get<std::string>();
}

// Numeric JSONL fields may arrive as strings or numbers; both are folded to
// their decimal text and go through the same validation as CSV.
std::string json_scalar_text(const json& obj, const char* key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw RowError{RejectReason::kMissingField};
    return {};
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number()) return it->dump();
  throw RowError{RejectReason::kBadField};
}

TradeRecord parse_jsonl_row(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error&) {
    throw RowError{RejectReason::kBadField};
  }
  if (!obj.is_object()) throw RowError{RejectReason::kBadField};
  return make_record(json_string_or_throw(obj, "tx_hash", true),
                     json_scalar_text(obj, "block_number", false),
                     json_scalar_text(obj, "timestamp", true),
                     json_string_or_throw(obj, "nft_id", true),
                     json_string_or_throw(obj, "collection", false),
                     json_string_or_throw(obj, "seller", false),
                     json_string_or_throw(obj, "buyer", true),
                     json_scalar_text(obj, "price_usd", true));
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string_view reject_reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::kBadField:
      return "bad_field";
    case RejectReason::kMissingField:
      return "missing_field";
    case RejectReason::kNegativePrice:
      return "negative_price";
    case RejectReason::kBadTimestamp:
      return "bad_timestamp";
  }
  return "unknown";
}

IngestReport parse_trades(std::istream& source, TradeFormat format,
                          const std::function<void(TradeRecord&&)>& sink,
                          const ParseOptions& options) {
  IngestReport report;
  std::string raw;
  std::vector<std::string> fields;
  fields.reserve(8);
  std::uint64_t line_no = 0;

  bool header_seen = format != TradeFormat::kCsv;
  while (std::getline(source, raw)) {
    ++line_no;
    std::string_view line = strip_cr(raw);
    if (!utf8_valid(line)) {
      throw IngestError("undecodable bytes (not UTF-8) at line " + std::to_string(line_no));
    }
    if (!header_seen) {
      if (line != kTradeCsvHeader) {
        throw IngestError("malformed CSV header at line 1: expected \"" +
                          std::string(kTradeCsvHeader) + "\", got \"" + std::string(line) + "\"");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    try {
      TradeRecord rec =
          format == TradeFormat::kCsv ? parse_csv_row(line, fields) : parse_jsonl_row(line);
      ++report.records_accepted;
      if (report.time_range) {
        report.time_range->first = std::min(report.time_range->first, rec.timestamp);
        report.time_range->second = std::max(report.time_range->second, rec.timestamp);
      } else {
        report.time_range = {rec.timestamp, rec.timestamp};
      }
      sink(std::move(rec));
    } catch (const RowError& err) {
      if (options.strict) {
        throw IngestError("rejected row at line " + std::to_string(line_no) + ": " +
                          std::string(reject_reason_name(err.reason)));
      }
      ++report.records_rejected;
      ++report.rejection_reasons[std::string(reject_reason_name(err.reason))];
    }
  }
  if (format == TradeFormat::kCsv && !header_seen) {
    throw IngestError("malformed CSV header: input is empty");
  }
  return report;
}

std::pair<std::vector<TradeRecord>, IngestReport> parse_trades_all(std::istream& source,
                                                                   TradeFormat format,
                                                                   const ParseOptions& options) {
  std::vector<TradeRecord> records;
  IngestReport report =
      parse_trades(source, format, [&](TradeRecord&& rec) { records.push_back(std::move(rec)); },
                   options);
  return {std::move(records), report};
}

namespace {

void normalize_wallet(std::string& wallet) {
  std::size_t begin = 0;
  std::size_t end = wallet.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(wallet[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(wallet[end - 1]))) --end;
  if (begin > 0 || end < wallet.size()) wallet = wallet.substr(begin, end - begin);
  std::transform(wallet.begin(), wallet.end(), wallet.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
}

}  // namespace

void normalize_wallets(TradeRecord& record) {
  normalize_wallet(record.seller);
  normalize_wallet(record.buyer);
}

void normalize_wallets(std::vector<TradeRecord>& records) {
  for (auto& rec : records) normalize_wallets(rec);
}

std::string canonical_csv_row(const TradeRecord& record) {
  std::string out;
  out.reserve(96);
  append_csv_field(out, record.tx_id);
  out.push_back(',');
  out += std::to_string(record.block);
  out.push_back(',');
  out += std::to_string(record.timestamp);
  out.push_back(',');
  append_csv_field(out, record.nft_id);
  out.push_back(',');
  append_csv_field(out, record.collection);
  out.push_back(',');
  append_csv_field(out, record.seller);
  out.push_back(',');
  append_csv_field(out, record.buyer);
  out.push_back(',');
  out += format_money(record.price_usd);
  return out;
}

}  // namespace nftcycles
