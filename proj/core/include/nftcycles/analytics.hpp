#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nftcycles/cycles.hpp"
#include "nftcycles/graph.hpp"
#include "nftcycles/money.hpp"

namespace nftcycles {

enum class Tier { kLow, kMid, kWhale };

std::string_view tier_name(Tier tier);

// Which timestamp deltas feed the timing fingerprint. kCycleInternal pairs
// consecutive entries inside each of the wallet's cycles; kWalletAll pairs
// the wallet's consecutive purchases across the whole graph.
enum class DeltaPopulation { kCycleInternal, kWalletAll };

struct AnalyticsConfig {
  std::int64_t band_lo_seconds = 12240;  // 3.4 h
  std::int64_t band_hi_seconds = 16560;  // 4.6 h
  DeltaPopulation delta_population = DeltaPopulation::kCycleInternal;
};

struct TraderProfile {
  std::string wallet;
  std::uint64_t cycle_count = 0;
  Money total_appreciation_usd = 0;
  Money mean_appreciation_usd = 0;  // total / cycle_count, half away from zero
  std::uint64_t distinct_nfts = 0;
  std::uint64_t distinct_counterparties = 0;  // other buyers inside this wallet's cycles
  std::uint64_t transaction_count = 0;        // distinct entries covered by the cycles
  Tier tier = Tier::kLow;
  double band_fraction = 0.0;
};

struct TierBreakdown {
  int low_max = 4;
  int mid_max = 14;
  std::uint64_t counts[3] = {0, 0, 0};          // indexed by Tier
  std::int64_t pct_hundredths[3] = {0, 0, 0};   // 9148 == 91.48%, round half up
};

// One profile per wallet owning at least one cycle, sorted by cycle_count
// descending then wallet ascending. Cycles must come from the given graph.
std::vector<TraderProfile> trader_profiles(std::span<const Cycle> cycles,
                                           const TemporalBipartiteGraph& graph,
                                           const AnalyticsConfig& config = {});

// Assigns tiers in place (low: count <= low_max; mid: <= mid_max; whale:
// above) and returns the breakdown. Throws ConfigError if low_max >= mid_max.
TierBreakdown classify_tiers(std::span<TraderProfile> profiles, int low_max = 4, int mid_max = 14);

// Deltas between consecutive entry timestamps over each cycle's
// entries[start..=end], concatenated in cycle order. All cycles must belong
// to one wallet.
std::vector<std::int64_t> inter_purchase_deltas(std::span<const Cycle> cycles,
                                                const TemporalBipartiteGraph& graph);

// Alternative population: deltas between the wallet's consecutive purchases
// anywhere in the graph, in time order.
std::vector<std::int64_t> wallet_purchase_deltas(std::string_view wallet,
                                                 const TemporalBipartiteGraph& graph);

// Fraction of deltas inside [band_lo, band_hi], inclusive; 0 when empty.
double band_fraction(std::span<const std::int64_t> deltas, std::int64_t band_lo_seconds,
                     std::int64_t band_hi_seconds);

struct BandWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double coverage = 0.0;
};

// Best window of the given width over [min delta, max delta], scanned in
// step increments; ties go to the smallest lo. Throws ConfigError on empty
// deltas or non-positive width/step.
BandWindow dominant_band(std::span<const std::int64_t> deltas, std::int64_t window_width_seconds,
                         std::int64_t step_seconds);

struct SuspicionConfig {
  std::uint64_t min_cycles = 15;
  double min_band_fraction = 0.88;
  std::uint64_t max_counterparties = 20;
};

inline constexpr std::string_view kFlagHighCycleCount = "high_cycle_count";
inline constexpr std::string_view kFlagTightTimingBand = "tight_timing_band";
inline constexpr std::string_view kFlagClosedCounterpartySet = "closed_counterparty_set";

struct SuspicionRow {
  std::string wallet;
  double score = 0.0;  // mean of the three indicator criteria
  std::vector<std::string> flags;
};

// Sorted by score descending, wallet ascending.
std::vector<SuspicionRow> suspicion_scores(std::span<const TraderProfile> profiles,
                                           const SuspicionConfig& config = {});

struct PlotTables {
  struct DurationHops {
    double duration_days = 0.0;
    std::uint32_t hop_length = 0;
  };
  struct DurationAppreciation {
    double duration_days = 0.0;
    Money appreciation_usd = 0;
  };
  std::vector<DurationHops> duration_vs_hops;
  std::vector<DurationAppreciation> duration_vs_appreciation;
};

// One row per cycle, in input order.
PlotTables plot_tables(std::span<const Cycle> cycles);

// Decimal helpers shared by the report writers: up to 6 fractional digits,
// trailing zeros trimmed, at least one digit kept ("3.0", "0.88125").
std::string format_ratio(double value);
// Hundredths as a fixed two-decimal percentage string ("91.48").
std::string format_hundredths(std::int64_t hundredths);

void write_traders_csv(std::ostream& out, std::span<const TraderProfile> profiles);
void write_tiers_csv(std::ostream& out, const TierBreakdown& breakdown);
void write_timing_csv(std::ostream& out, std::span<const std::int64_t> deltas);
void write_duration_vs_hops_csv(std::ostream& out, const PlotTables& tables);
void write_duration_vs_appreciation_csv(std::ostream& out, const PlotTables& tables);
void write_suspicion_csv(std::ostream& out, std::span<const SuspicionRow> rows);

}  // namespace nftcycles
