#include <exception>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "nftcycles/errors.hpp"
#include "nftcycles/version.hpp"

namespace {

constexpr int kExitRuntimeError = 1;
constexpr int kExitUsageError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal NFT trade analysis: ownership cycles, trader tiers, "
               "timing fingerprints, and wash-trade suspicion scoring"};
  app.set_version_flag("--version", std::string(nftcycles::kVersion));
  app.require_subcommand(1);

  std::function<int()> action;

  nftcli::CyclesOptions cycles_opt;
  CLI::App* cycles = app.add_subcommand(
      "cycles", "Extract time-respecting ownership cycles into cycles.csv");
  cycles->add_option("--input", cycles_opt.input, "Trade records file")->required();
  cycles->add_option("--format", cycles_opt.format, "Input format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cycles->add_option("--out", cycles_opt.out, "Output cycles CSV path");
  cycles->add_option("--min-hops", cycles_opt.min_hops, "Minimum cycle hop length")
      ->check(CLI::PositiveNumber);
  cycles->add_flag("--strict-chain", cycles_opt.strict_chain,
                   "Split paths at seller-continuity breaks");
  cycles->add_flag("--appreciating-only", cycles_opt.appreciating_only,
                   "Keep only cycles with positive appreciation");
  cycles->add_option("--threads", cycles_opt.threads, "Worker threads (0 = auto)");
  cycles->add_flag("--strict", cycles_opt.strict, "Treat any rejected row as a fatal error");
  cycles->callback([&] { action = [&] { return nftcli::run_cycles(cycles_opt); }; });

  nftcli::ReportOptions report_opt;
  CLI::App* report = app.add_subcommand(
      "report", "Compute trader profiles, tiers, timing and suspicion reports");
  report->add_option("--cycles", report_opt.cycles, "cycles.csv produced by the cycles command")
      ->required();
  report->add_option("--input", report_opt.input, "Trade records file")->required();
  report->add_option("--format", report_opt.format, "Input format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  report->add_option("--out-dir", report_opt.out_dir, "Report output directory");
  report->add_option("--low-max", report_opt.low_max, "Low tier: cycle_count <= this");
  report->add_option("--mid-max", report_opt.mid_max, "Mid tier: cycle_count <= this");
  report->add_option("--band-lo-hours", report_opt.band_lo_hours, "Timing band lower edge");
  report->add_option("--band-hi-hours", report_opt.band_hi_hours, "Timing band upper edge");
  report->add_option("--window-hours", report_opt.window_hours,
                     "Dominant-band window width in hours");
  report->add_option("--window-step-hours", report_opt.window_step_hours,
                     "Dominant-band scan step in hours");
  report->add_option("--min-cycles", report_opt.min_cycles, "Suspicion: cycle count threshold");
  report->add_option("--min-band-fraction", report_opt.min_band_fraction,
                     "Suspicion: band fraction threshold");
  report->add_option("--max-counterparties", report_opt.max_counterparties,
                     "Suspicion: counterparty ceiling");
  report->add_option("--delta-population", report_opt.delta_population,
                     "Timing deltas: cycle (cycle-internal) or wallet (all purchases)")
      ->check(CLI::IsMember({"cycle", "wallet"}));
  report->add_flag("--strict", report_opt.strict, "Treat any rejected row as a fatal error");
  report->callback([&] { action = [&] { return nftcli::run_report(report_opt); }; });

  nftcli::SimulateOptions simulate_opt;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate a labeled synthetic corpus with optional wash-trade rings");
  simulate->add_option("--out", simulate_opt.out, "Corpus CSV path")->required();
  simulate->add_option("--labels", simulate_opt.labels,
                       "Labels CSV path (default: labels.csv beside --out)");
  simulate->add_option("--seed", simulate_opt.seed, "RNG seed");
  simulate->add_option("--wallets", simulate_opt.wallets, "Background wallet pool size");
  simulate->add_option("--nfts", simulate_opt.nfts, "Background NFT count");
  simulate->add_option("--trades", simulate_opt.trades, "Background trade count");
  simulate->add_option("--start-time", simulate_opt.start_time, "Corpus start (Unix seconds)");
  simulate->add_option("--horizon-days", simulate_opt.horizon_days, "Background time horizon");
  simulate->add_option("--rings", simulate_opt.rings, "Number of injected rings");
  simulate->add_option("--ring-size", simulate_opt.ring_size, "Wallets per ring");
  simulate->add_option("--ring-nfts", simulate_opt.ring_nfts, "NFTs per ring");
  simulate->add_option("--traversals", simulate_opt.traversals, "Full loops per ring NFT");
  simulate->add_option("--period-hours", simulate_opt.period_hours, "Ring trade period");
  simulate->add_option("--jitter-hours", simulate_opt.jitter_hours, "Ring timing jitter (+/-)");
  simulate->add_option("--band-hit-ratio", simulate_opt.band_hit_ratio,
                       "Fraction of ring deltas inside the period band");
  simulate->add_option("--price-base", simulate_opt.price_base, "Ring price base (USD)");
  simulate->add_option("--price-step", simulate_opt.price_step,
                       "Ring per-trade price drift (USD)");
  simulate->add_flag("--allow-buyer-reuse", simulate_opt.allow_buyer_reuse,
                     "Let background buyers repeat within one NFT");
  simulate->add_flag("--randomize-case", simulate_opt.randomize_case,
                     "Randomize wallet letter case in the emitted file");
  simulate->add_option("--corrupt-rows", simulate_opt.corrupt_rows,
                       "Corrupt this many background rows");
  simulate->add_option("--contamination-rate", simulate_opt.contamination_rate,
                       "Fraction of background trades aimed at ring NFTs");
  simulate->callback([&] { action = [&] { return nftcli::run_simulate(simulate_opt); }; });

  nftcli::VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check the fast cycle path against the brute-force oracle");
  verify->add_option("--seeds", verify_opt.seeds, "Number of random instances");
  verify->add_option("--seed", verify_opt.seed, "Base RNG seed");
  verify->add_option("--max-wallets", verify_opt.max_wallets, "Max wallets per instance");
  verify->add_option("--max-nfts", verify_opt.max_nfts, "Max NFTs per instance");
  verify->add_option("--max-trades", verify_opt.max_trades, "Max trades per instance");
  verify->add_option("--min-hops", verify_opt.min_hops,
                     "Check a single min_hops value (default: both 1 and 2)");
  verify->callback([&] { action = [&] { return nftcli::run_verify(verify_opt); }; });

  nftcli::StatsOptions stats_opt;
  CLI::App* stats = app.add_subcommand("stats", "Print graph statistics for a trade file");
  stats->add_option("--input", stats_opt.input, "Trade records file")->required();
  stats->add_option("--format", stats_opt.format, "Input format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  stats->add_flag("--strict", stats_opt.strict, "Treat any rejected row as a fatal error");
  stats->add_flag("--strict-chain", stats_opt.strict_chain,
                  "Split paths at seller-continuity breaks");
  stats->add_option("--export-canonical", stats_opt.export_canonical,
                    "Write a canonical sorted snapshot CSV here");
  stats->callback([&] { action = [&] { return nftcli::run_stats(stats_opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsageError;
  }

  try {
    return action ? action() : kExitUsageError;
  } catch (const nftcycles::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}
