#include <filesystem>
#include <fstream>
#include <iostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "nftcycles/analytics.hpp"
#include "nftcycles/cycles.hpp"
#include "nftcycles/version.hpp"
#include "pipeline.hpp"
#include "util.hpp"

namespace nftcli {

using namespace nftcycles;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

int run_report(const ReportOptions& opt) {
  if (opt.band_lo_hours >= opt.band_hi_hours) {
    throw ConfigError("--band-lo-hours must be < --band-hi-hours");
  }
  if (opt.delta_population != "cycle" && opt.delta_population != "wallet") {
    throw ConfigError("--delta-population must be cycle or wallet");
  }

  std::ifstream cycles_in(opt.cycles, std::ios::binary);
  if (!cycles_in) throw IngestError("cannot open cycles file: " + opt.cycles);
  const std::vector<Cycle> cycles = read_cycles_csv(cycles_in);
  cycles_in.close();

  const std::string cycles_digest = sha256_file(opt.cycles);
  const std::string input_digest = sha256_file(opt.input);
  auto [graph, ingest_report] = load_graph(opt.input, format_from_name(opt.format), opt.strict,
                                           TemporalBipartiteGraph::Mode::kLenient);

  AnalyticsConfig config;
  config.band_lo_seconds = seconds_from_hours(opt.band_lo_hours);
  config.band_hi_seconds = seconds_from_hours(opt.band_hi_hours);
  config.delta_population = opt.delta_population == "wallet" ? DeltaPopulation::kWalletAll
                                                             : DeltaPopulation::kCycleInternal;

  std::vector<TraderProfile> profiles = trader_profiles(cycles, graph, config);
  const TierBreakdown breakdown = classify_tiers(profiles, opt.low_max, opt.mid_max);

  SuspicionConfig suspicion_config;
  suspicion_config.min_cycles = opt.min_cycles;
  suspicion_config.min_band_fraction = opt.min_band_fraction;
  suspicion_config.max_counterparties = opt.max_counterparties;
  const std::vector<SuspicionRow> suspicion = suspicion_scores(profiles, suspicion_config);

  const PlotTables plots = plot_tables(cycles);

  const fs::path out_dir(opt.out_dir);
  fs::create_directories(out_dir);
  write_file_atomic(out_dir / "traders.csv",
                    [&](std::ostream& out) { write_traders_csv(out, profiles); });
  write_file_atomic(out_dir / "tiers.csv",
                    [&](std::ostream& out) { write_tiers_csv(out, breakdown); });
  write_file_atomic(out_dir / "suspicion.csv",
                    [&](std::ostream& out) { write_suspicion_csv(out, suspicion); });
  write_file_atomic(out_dir / "duration_vs_hops.csv",
                    [&](std::ostream& out) { write_duration_vs_hops_csv(out, plots); });
  write_file_atomic(out_dir / "duration_vs_appreciation.csv",
                    [&](std::ostream& out) { write_duration_vs_appreciation_csv(out, plots); });

  // Inter-purchase timing files for the whale tier, using the same delta
  // population that produced band_fraction.
  std::unordered_map<std::string_view, std::vector<Cycle>> cycles_by_wallet;
  for (const Cycle& c : cycles) cycles_by_wallet[c.wallet].push_back(c);

  json timing_files = json::array();
  for (const TraderProfile& profile : profiles) {
    if (profile.tier != Tier::kWhale) continue;
    std::vector<std::int64_t> deltas =
        config.delta_population == DeltaPopulation::kWalletAll
            ? wallet_purchase_deltas(profile.wallet, graph)
            : inter_purchase_deltas(cycles_by_wallet[profile.wallet], graph);
    const std::string name = "timing_" + sanitize_filename(profile.wallet) + ".csv";
    write_file_atomic(out_dir / name,
                      [&](std::ostream& out) { write_timing_csv(out, deltas); });
    timing_files.push_back(name);
  }

  json meta;
  meta["tool"] = "nftcycles";
  meta["version"] = std::string(kVersion);
  meta["command"] = "report";
  meta["params"] = {
      {"low_max", opt.low_max},
      {"mid_max", opt.mid_max},
      {"band_lo_seconds", config.band_lo_seconds},
      {"band_hi_seconds", config.band_hi_seconds},
      {"window_seconds", seconds_from_hours(opt.window_hours)},
      {"window_step_seconds", seconds_from_hours(opt.window_step_hours)},
      {"min_cycles", opt.min_cycles},
      {"min_band_fraction", opt.min_band_fraction},
      {"max_counterparties", opt.max_counterparties},
      {"delta_population", opt.delta_population},
      {"mean_appreciation_rule", "total_appreciation / cycle_count"},
  };
  meta["inputs"] = {
      {"cycles", {{"path", opt.cycles}, {"sha256", cycles_digest}, {"rows", cycles.size()}}},
      {"trades",
       {{"path", opt.input},
        {"sha256", input_digest},
        {"records_accepted", ingest_report.records_accepted},
        {"records_rejected", ingest_report.records_rejected}}},
  };
  meta["outputs"] = {
      {"traders", profiles.size()},
      {"timing_files", timing_files},
  };

  // Dominant timing window per whale, for the record and the summary line.
  json whale_bands = json::object();
  std::string top_band_line;
  for (const TraderProfile& profile : profiles) {
    if (profile.tier != Tier::kWhale) continue;
    std::vector<std::int64_t> deltas =
        config.delta_population == DeltaPopulation::kWalletAll
            ? wallet_purchase_deltas(profile.wallet, graph)
            : inter_purchase_deltas(cycles_by_wallet[profile.wallet], graph);
    if (deltas.empty()) continue;
    const BandWindow band = dominant_band(deltas, seconds_from_hours(opt.window_hours),
                                          seconds_from_hours(opt.window_step_hours));
    whale_bands[profile.wallet] = {
        {"lo_seconds", band.lo}, {"hi_seconds", band.hi}, {"coverage", band.coverage}};
    if (top_band_line.empty()) {
      top_band_line = "dominant band " + profile.wallet + ": [" +
                      format_ratio(double(band.lo) / 3600.0) + "h, " +
                      format_ratio(double(band.hi) / 3600.0) +
                      "h] coverage " + format_ratio(band.coverage);
    }
  }
  meta["whale_dominant_bands"] = whale_bands;
  write_file_atomic(out_dir / "run_meta.json",
                    [&](std::ostream& out) { out << meta.dump(2) << '\n'; });

  std::cout << "traders: " << profiles.size() << '\n';
  std::cout << "low: " << breakdown.counts[0] << " ("
            << format_hundredths(breakdown.pct_hundredths[0]) << "%) mid: "
            << breakdown.counts[1] << " (" << format_hundredths(breakdown.pct_hundredths[1])
            << "%) whale: " << breakdown.counts[2] << " ("
            << format_hundredths(breakdown.pct_hundredths[2]) << "%)" << '\n';
  std::cout << "top suspicion:\n";
  for (std::size_t i = 0; i < suspicion.size() && i < 5; ++i) {
    std::string flags;
    for (const auto& flag : suspicion[i].flags) {
      if (!flags.empty()) flags.push_back(';');
      flags += flag;
    }
    std::cout << "  " << suspicion[i].wallet << " score=" << format_ratio(suspicion[i].score)
              << " [" << flags << "]\n";
  }
  if (!top_band_line.empty()) std::cout << top_band_line << '\n';
  return 0;
}

}  // namespace nftcli
