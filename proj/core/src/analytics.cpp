#include "nftcycles/analytics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "nftcycles/errors.hpp"

namespace nftcycles {

namespace {

const OwnershipPath& path_for_cycle(const TemporalBipartiteGraph& graph, const Cycle& cycle) {
  const OwnershipPath* path = graph.find_path(cycle.nft_id);
  if (!path) throw NotFoundError("cycle references unknown nft_id: " + cycle.nft_id);
  if (cycle.end_index >= path->entries.size() || cycle.start_index >= cycle.end_index) {
    throw GraphError("cycle indices out of range for nft_id: " + cycle.nft_id);
  }
  return *path;
}

Money mean_half_away_from_zero(Money total, std::uint64_t count) {
  if (count == 0) return 0;
  bool negative = total < 0;
  std::uint64_t magnitude = negative ? std::uint64_t(-(total + 1)) + 1 : std::uint64_t(total);
  std::uint64_t q = magnitude / count;
  std::uint64_t r = magnitude % count;
  if (2 * r >= count) ++q;
  return negative ? -Money(q) : Money(q);
}

std::int64_t percentage_hundredths(std::uint64_t count, std::uint64_t total) {
  if (total == 0) return 0;
  std::uint64_t n = count * 10000;
  std::uint64_t q = n / total;
  std::uint64_t r = n % total;
  if (2 * r >= total) ++q;  // round half up
  return std::int64_t(q);
}

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

}  // namespace

std::string_view tier_name(Tier tier) {
  switch (tier) {
    case Tier::kLow:
      return "low";
    case Tier::kMid:
      return "mid";
    case Tier::kWhale:
      return "whale";
  }
  return "unknown";
}

std::vector<TraderProfile> trader_profiles(std::span<const Cycle> cycles,
                                           const TemporalBipartiteGraph& graph,
                                           const AnalyticsConfig& config) {
  std::unordered_map<std::string_view, std::vector<const Cycle*>> by_wallet;
  for (const Cycle& c : cycles) by_wallet[c.wallet].push_back(&c);

  std::vector<TraderProfile> profiles;
  profiles.reserve(by_wallet.size());

  std::vector<std::int64_t> deltas;
  for (const auto& [wallet, wallet_cycles] : by_wallet) {
    TraderProfile p;
    p.wallet = std::string(wallet);
    p.cycle_count = wallet_cycles.size();

    std::unordered_set<std::string_view> nfts;
    std::unordered_set<std::string_view> counterparties;
    std::map<std::string_view, std::vector<std::pair<std::uint32_t, std::uint32_t>>> spans_by_nft;
    deltas.clear();

    for (const Cycle* c : wallet_cycles) {
      const OwnershipPath& path = path_for_cycle(graph, *c);
      p.total_appreciation_usd += c->appreciation_usd;
      nfts.insert(path.nft_id);
      spans_by_nft[path.nft_id].emplace_back(c->start_index, c->end_index);
      for (std::uint32_t i = c->start_index; i <= c->end_index; ++i) {
        const std::string& buyer = path.entries[i].buyer;
        if (buyer != wallet) counterparties.insert(buyer);
        if (i < c->end_index) {
          deltas.push_back(path.entries[i + 1].timestamp - path.entries[i].timestamp);
        }
      }
    }

    // Distinct covered entries: merge the inclusive index spans per NFT.
    // Consecutive cycles of one wallet share their endpoint entry.
    for (auto& [nft, spans] : spans_by_nft) {
      std::sort(spans.begin(), spans.end());
      std::uint32_t lo = spans.front().first;
      std::uint32_t hi = spans.front().second;
      for (const auto& [s, e] : spans) {
        if (s > hi + 1) {
          p.transaction_count += hi - lo + 1;
          lo = s;
          hi = e;
        } else {
          hi = std::max(hi, e);
        }
      }
      p.transaction_count += hi - lo + 1;
    }

    p.mean_appreciation_usd = mean_half_away_from_zero(p.total_appreciation_usd, p.cycle_count);
    p.distinct_nfts = nfts.size();
    p.distinct_counterparties = counterparties.size();
    if (config.delta_population == DeltaPopulation::kWalletAll) {
      auto all = wallet_purchase_deltas(wallet, graph);
      p.band_fraction = band_fraction(all, config.band_lo_seconds, config.band_hi_seconds);
    } else {
      p.band_fraction = band_fraction(deltas, config.band_lo_seconds, config.band_hi_seconds);
    }
    profiles.push_back(std::move(p));
  }

  std::sort(profiles.begin(), profiles.end(), [](const TraderProfile& a, const TraderProfile& b) {
    if (a.cycle_count != b.cycle_count) return a.cycle_count > b.cycle_count;
    return a.wallet < b.wallet;
  });
  return profiles;
}

TierBreakdown classify_tiers(std::span<TraderProfile> profiles, int low_max, int mid_max) {
  if (low_max >= mid_max) {
    throw ConfigError("tier thresholds invalid: low_max (" + std::to_string(low_max) +
                      ") must be < mid_max (" + std::to_string(mid_max) + ")");
  }
  TierBreakdown breakdown;
  breakdown.low_max = low_max;
  breakdown.mid_max = mid_max;
  for (TraderProfile& p : profiles) {
    Tier tier = p.cycle_count <= std::uint64_t(low_max)   ? Tier::kLow
                : p.cycle_count <= std::uint64_t(mid_max) ? Tier::kMid
                                                          : Tier::kWhale;
    p.tier = tier;
    ++breakdown.counts[std::size_t(tier)];
  }
  std::uint64_t total = profiles.size();
  for (std::size_t t = 0; t < 3; ++t) {
    breakdown.pct_hundredths[t] = percentage_hundredths(breakdown.counts[t], total);
  }
  return breakdown;
}

std::vector<std::int64_t> inter_purchase_deltas(std::span<const Cycle> cycles,
                                                const TemporalBipartiteGraph& graph) {
  std::vector<std::int64_t> deltas;
  for (const Cycle& c : cycles) {
    const OwnershipPath& path = path_for_cycle(graph, c);
    for (std::uint32_t i = c.start_index; i < c.end_index; ++i) {
      deltas.push_back(path.entries[i + 1].timestamp - path.entries[i].timestamp);
    }
  }
  return deltas;
}

std::vector<std::int64_t> wallet_purchase_deltas(std::string_view wallet,
                                                 const TemporalBipartiteGraph& graph) {
  std::vector<std::int64_t> deltas;
  const auto* refs = graph.purchases(wallet);
  if (!refs || refs->size() < 2) return deltas;
  std::vector<std::int64_t> times;
  times.reserve(refs->size());
  for (const auto& ref : *refs) {
    times.push_back(graph.paths()[ref.path_index].entries[ref.entry_index].timestamp);
  }
  std::sort(times.begin(), times.end());
  for (std::size_t i = 1; i < times.size(); ++i) deltas.push_back(times[i] - times[i - 1]);
  return deltas;
}

double band_fraction(std::span<const std::int64_t> deltas, std::int64_t band_lo_seconds,
                     std::int64_t band_hi_seconds) {
  if (band_lo_seconds >= band_hi_seconds) {
    throw ConfigError("band_lo must be < band_hi");
  }
  if (deltas.empty()) return 0.0;
  std::size_t inside = 0;
  for (std::int64_t d : deltas) {
    if (d >= band_lo_seconds && d <= band_hi_seconds) ++inside;
  }
  return double(inside) / double(deltas.size());
}

BandWindow dominant_band(std::span<const std::int64_t> deltas, std::int64_t window_width_seconds,
                         std::int64_t step_seconds) {
  if (deltas.empty()) throw ConfigError("dominant_band requires at least one delta");
  if (window_width_seconds <= 0 || step_seconds <= 0) {
    throw ConfigError("window width and step must be positive");
  }
  std::vector<std::int64_t> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end());

  BandWindow best;
  bool have_best = false;
  const std::int64_t min_delta = sorted.front();
  const std::int64_t max_delta = sorted.back();
  for (std::int64_t lo = min_delta;; lo += step_seconds) {
    auto first = std::lower_bound(sorted.begin(), sorted.end(), lo);
    auto last = std::upper_bound(sorted.begin(), sorted.end(), lo + window_width_seconds);
    double coverage = double(last - first) / double(sorted.size());
    if (!have_best || coverage > best.coverage) {
      best = {lo, lo + window_width_seconds, coverage};
      have_best = true;
    }
    if (lo >= max_delta) break;
  }
  return best;
}

std::vector<SuspicionRow> suspicion_scores(std::span<const TraderProfile> profiles,
                                           const SuspicionConfig& config) {
  std::vector<SuspicionRow> rows;
  rows.reserve(profiles.size());
  for (const TraderProfile& p : profiles) {
    SuspicionRow row;
    row.wallet = p.wallet;
    int met = 0;
    if (p.cycle_count >= config.min_cycles) {
      ++met;
      row.flags.emplace_back(kFlagHighCycleCount);
    }
    if (p.band_fraction >= config.min_band_fraction) {
      ++met;
      row.flags.emplace_back(kFlagTightTimingBand);
    }
    if (p.distinct_counterparties <= config.max_counterparties) {
      ++met;
      row.flags.emplace_back(kFlagClosedCounterpartySet);
    }
    row.score = double(met) / 3.0;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const SuspicionRow& a, const SuspicionRow& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.wallet < b.wallet;
  });
  return rows;
}

PlotTables plot_tables(std::span<const Cycle> cycles) {
  PlotTables tables;
  tables.duration_vs_hops.reserve(cycles.size());
  tables.duration_vs_appreciation.reserve(cycles.size());
  for (const Cycle& c : cycles) {
    double days = double(c.duration_seconds) / 86400.0;
    tables.duration_vs_hops.push_back({days, c.hop_length});
    tables.duration_vs_appreciation.push_back({days, c.appreciation_usd});
  }
  return tables;
}

std::string format_ratio(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string out(buf);
  std::size_t last = out.size();
  while (last > 0 && out[last - 1] == '0') --last;
  if (last > 0 && out[last - 1] == '.') ++last;  // keep one fractional digit
  out.resize(last);
  return out;
}

std::string format_hundredths(std::int64_t hundredths) {
  std::int64_t whole = hundredths / 100;
  std::int64_t frac = hundredths % 100;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%02lld", static_cast<long long>(whole),
                static_cast<long long>(frac < 0 ? -frac : frac));
  return std::string(buf);
}

void write_traders_csv(std::ostream& out, std::span<const TraderProfile> profiles) {
  out << "wallet,cycle_count,total_appreciation_usd,mean_appreciation_usd,distinct_nfts,"
         "distinct_counterparties,transaction_count,tier,band_fraction\n";
  std::string row;
  for (const TraderProfile& p : profiles) {
    row.clear();
    append_csv_field(row, p.wallet);
    row.push_back(',');
    row += std::to_string(p.cycle_count);
    row.push_back(',');
    row += format_money(p.total_appreciation_usd);
    row.push_back(',');
    row += format_money(p.mean_appreciation_usd);
    row.push_back(',');
    row += std::to_string(p.distinct_nfts);
    row.push_back(',');
    row += std::to_string(p.distinct_counterparties);
    row.push_back(',');
    row += std::to_string(p.transaction_count);
    row.push_back(',');
    row += tier_name(p.tier);
    row.push_back(',');
    row += format_ratio(p.band_fraction);
    row.push_back('\n');
    out << row;
  }
}

void write_tiers_csv(std::ostream& out, const TierBreakdown& breakdown) {
  out << "tier,threshold,count,percentage\n";
  std::uint64_t total = breakdown.counts[0] + breakdown.counts[1] + breakdown.counts[2];
  if (total == 0) return;
  out << "low,<=" << breakdown.low_max << ',' << breakdown.counts[0] << ','
      << format_hundredths(breakdown.pct_hundredths[0]) << '\n';
  out << "mid," << breakdown.low_max + 1 << '-' << breakdown.mid_max << ','
      << breakdown.counts[1] << ',' << format_hundredths(breakdown.pct_hundredths[1]) << '\n';
  out << "whale,>" << breakdown.mid_max << ',' << breakdown.counts[2] << ','
      << format_hundredths(breakdown.pct_hundredths[2]) << '\n';
}

void write_timing_csv(std::ostream& out, std::span<const std::int64_t> deltas) {
  out << "delta_seconds\n";
  for (std::int64_t d : deltas) out << d << '\n';
}

void write_duration_vs_hops_csv(std::ostream& out, const PlotTables& tables) {
  out << "duration_days,hop_length\n";
  for (const auto& row : tables.duration_vs_hops) {
    out << format_ratio(row.duration_days) << ',' << row.hop_length << '\n';
  }
}

void write_duration_vs_appreciation_csv(std::ostream& out, const PlotTables& tables) {
  out << "duration_days,appreciation_usd\n";
  for (const auto& row : tables.duration_vs_appreciation) {
    out << format_ratio(row.duration_days) << ',' << format_money(row.appreciation_usd) << '\n';
  }
}

void write_suspicion_csv(std::ostream& out, std::span<const SuspicionRow> rows) {
  out << "wallet,score,flags\n";
  std::string line;
  for (const SuspicionRow& row : rows) {
    line.clear();
    append_csv_field(line, row.wallet);
    line.push_back(',');
    line += format_ratio(row.score);
    line.push_back(',');
    std::string flags;
    for (const auto& flag : row.flags) {
      if (!flags.empty()) flags.push_back(';');
      flags += flag;
    }
    append_csv_field(line, flags);
    line.push_back('\n');
    out << line;
  }
}

}  // namespace nftcycles
