#include "nftcycles/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "nftcycles/errors.hpp"

namespace nftcycles {

namespace {

Cycle make_cycle(const OwnershipPath& path, std::uint32_t start, std::uint32_t end) {
  const PathEntry& first = path.entries[start];
  const PathEntry& last = path.entries[end];

  Cycle c;
  c.nft_id = path.nft_id;
  c.wallet = first.buyer;
  c.start_index = start;
  c.end_index = end;
  c.start_tx = first.tx_id;
  c.end_tx = last.tx_id;
  c.start_time = first.timestamp;
  c.end_time = last.timestamp;
  c.duration_seconds = last.timestamp - first.timestamp;
  c.hop_length = end - start;
  c.is_self_transfer = c.hop_length == 1;

  std::unordered_set<std::string_view> buyers;
  for (std::uint32_t i = start; i <= end; ++i) buyers.insert(path.entries[i].buyer);
  c.unique_wallets = std::uint32_t(buyers.size());

  c.sold_price_usd = path.entries[start + 1].price_usd;
  c.repurchase_price_usd = last.price_usd;
  c.appreciation_usd = c.repurchase_price_usd - c.sold_price_usd;

  auto brk = std::upper_bound(path.chain_breaks.begin(), path.chain_breaks.end(), start);
  c.spans_break = brk != path.chain_breaks.end() && *brk <= end;
  return c;
}

}  // namespace

std::vector<Cycle> extract_cycles(const OwnershipPath& path, int min_hops,
                                  bool respect_chain_breaks) {
  if (min_hops < 1) throw ConfigError("min_hops must be >= 1");
  std::vector<Cycle> out;
  if (path.entries.empty()) return out;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> segments;
  if (respect_chain_breaks) {
    segments = path.segments();
  } else {
    segments.emplace_back(0, std::uint32_t(path.entries.size()));
  }

  std::unordered_map<std::string_view, std::uint32_t> last_seen;
  for (auto [begin, end] : segments) {
    last_seen.clear();
    for (std::uint32_t ei = begin; ei < end; ++ei) {
      std::string_view buyer = path.entries[ei].buyer;
      auto [it, inserted] = last_seen.try_emplace(buyer, ei);
      if (!inserted) {
        std::uint32_t prev = it->second;
        if (ei - prev >= std::uint32_t(min_hops)) {
          out.push_back(make_cycle(path, prev, ei));
        }
        it->second = ei;
      }
    }
  }

  // One buyer per entry, so start_index alone is already unique; the wallet
  // tiebreak is kept for the stated ordering contract.
  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    if (a.start_index != b.start_index) return a.start_index < b.start_index;
    return a.wallet < b.wallet;
  });
  return out;
}

std::vector<Cycle> cycle_table(const TemporalBipartiteGraph& graph,
                               const CycleTableOptions& options) {
  if (options.min_hops < 1) throw ConfigError("min_hops must be >= 1");
  const auto& paths = graph.paths();
  const bool respect_breaks = graph.mode() == TemporalBipartiteGraph::Mode::kStrictChain;

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::min<std::size_t>(threads, paths.size());

  std::vector<std::vector<Cycle>> per_path(paths.size());
  auto work = [&](std::uint32_t pi) {
    std::vector<Cycle> cycles = extract_cycles(paths[pi], options.min_hops, respect_breaks);
    if (options.appreciating_only) {
      std::erase_if(cycles, [](const Cycle& c) { return c.appreciation_usd <= 0; });
    }
    per_path[pi] = std::move(cycles);
  };

  if (threads <= 1) {
    for (std::uint32_t pi = 0; pi < paths.size(); ++pi) work(pi);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint32_t pi = next.fetch_add(1); pi < paths.size(); pi = next.fetch_add(1)) {
          work(pi);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Paths are nft-sorted and each slot is start-sorted, so concatenation in
  // slot order yields the global (nft_id, start_index, wallet) order for any
  // thread count.
  std::size_t total = 0;
  for (const auto& slot : per_path) total += slot.size();
  std::vector<Cycle> out;
  out.reserve(total);
  for (auto& slot : per_path) {
    for (auto& c : slot) out.push_back(std::move(c));
  }
  return out;
}

namespace {

void append_csv_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
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

// Same RFC4180 splitting as ingest; duplicated locally to keep the two
// readers free of shared internals.
bool split_fields(std::string_view line, std::vector<std::string>& out) {
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
    ++i;
  }
}

template <typename T>
T parse_int_or_throw(std::string_view s, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IngestError("malformed cycles.csv: bad " + std::string(what) + " value \"" +
                      std::string(s) + "\"");
  }
  return value;
}

bool parse_bool_or_throw(std::string_view s, const char* what) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw IngestError("malformed cycles.csv: bad " + std::string(what) + " value \"" +
                    std::string(s) + "\"");
}

Money parse_money_or_throw(std::string_view s, const char* what) {
  auto value = parse_money(s);
  if (!value) {
    throw IngestError("malformed cycles.csv: bad " + std::string(what) + " value \"" +
                      std::string(s) + "\"");
  }
  return *value;
}

}  // namespace

void write_cycles_csv(std::ostream& out, std::span<const Cycle> cycles) {
  out << kCyclesCsvHeader << '\n';
  std::string row;
  for (const Cycle& c : cycles) {
    row.clear();
    append_csv_field(row, c.nft_id);
    row.push_back(',');
    append_csv_field(row, c.wallet);
    row.push_back(',');
    row += std::to_string(c.start_index);
    row.push_back(',');
    row += std::to_string(c.end_index);
    row.push_back(',');
    append_csv_field(row, c.start_tx);
    row.push_back(',');
    append_csv_field(row, c.end_tx);
    row.push_back(',');
    row += std::to_string(c.start_time);
    row.push_back(',');
    row += std::to_string(c.end_time);
    row.push_back(',');
    row += std::to_string(c.duration_seconds);
    row.push_back(',');
    row += std::to_string(c.hop_length);
    row.push_back(',');
    row += std::to_string(c.unique_wallets);
    row.push_back(',');
    row += format_money(c.sold_price_usd);
    row.push_back(',');
    row += format_money(c.repurchase_price_usd);
    row.push_back(',');
    row += format_money(c.appreciation_usd);
    row.push_back(',');
    row += c.is_self_transfer ? '1' : '0';
    row.push_back(',');
    row += c.spans_break ? '1' : '0';
    row.push_back('\n');
    out << row;
  }
}

std::vector<Cycle> read_cycles_csv(std::istream& in) {
  std::vector<Cycle> cycles;
  std::string raw;
  std::vector<std::string> fields;
  bool header_seen = false;
  std::uint64_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kCyclesCsvHeader) {
        throw IngestError("malformed cycles.csv: unexpected header \"" + std::string(line) + "\"");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    if (!split_fields(line, fields) || fields.size() != 16) {
      throw IngestError("malformed cycles.csv: bad row at line " + std::to_string(line_no));
    }
    Cycle c;
    c.nft_id = std::move(fields[0]);
    c.wallet = std::move(fields[1]);
    c.start_index = parse_int_or_throw<std::uint32_t>(fields[2], "start_index");
    c.end_index = parse_int_or_throw<std::uint32_t>(fields[3], "end_index");
    c.start_tx = std::move(fields[4]);
    c.end_tx = std::move(fields[5]);
    c.start_time = parse_int_or_throw<std::int64_t>(fields[6], "start_time");
    c.end_time = parse_int_or_throw<std::int64_t>(fields[7], "end_time");
    c.duration_seconds = parse_int_or_throw<std::int64_t>(fields[8], "duration_seconds");
    c.hop_length = parse_int_or_throw<std::uint32_t>(fields[9], "hop_length");
    c.unique_wallets = parse_int_or_throw<std::uint32_t>(fields[10], "unique_wallets");
    c.sold_price_usd = parse_money_or_throw(fields[11], "sold_price_usd");
    c.repurchase_price_usd = parse_money_or_throw(fields[12], "repurchase_price_usd");
    c.appreciation_usd = parse_money_or_throw(fields[13], "appreciation_usd");
    c.is_self_transfer = parse_bool_or_throw(fields[14], "is_self_transfer");
    c.spans_break = parse_bool_or_throw(fields[15], "spans_break");
    if (c.end_index <= c.start_index) {
      throw IngestError("malformed cycles.csv: end_index <= start_index at line " +
                        std::to_string(line_no));
    }
    cycles.push_back(std::move(c));
  }
  if (!header_seen) throw IngestError("malformed cycles.csv: input is empty");
  return cycles;
}

}  // namespace nftcycles
