#pragma once

#include <cstdint>
#include <string>

namespace nftcli {

struct CyclesOptions {
  std::string input;
  std::string format = "csv";
  std::string out = "cycles.csv";
  int min_hops = 2;
  bool strict_chain = false;
  bool appreciating_only = false;
  unsigned threads = 0;
  bool strict = false;
};

struct ReportOptions {
  std::string cycles = "cycles.csv";
  std::string input;
  std::string format = "csv";
  std::string out_dir = "reports";
  int low_max = 4;
  int mid_max = 14;
  double band_lo_hours = 3.4;
  double band_hi_hours = 4.6;
  double window_hours = 1.2;
  double window_step_hours = 0.1;
  std::uint64_t min_cycles = 15;
  double min_band_fraction = 0.88;
  std::uint64_t max_counterparties = 20;
  std::string delta_population = "cycle";  // cycle | wallet
  bool strict = false;
};

struct SimulateOptions {
  std::string out;
  std::string labels;  // default: labels.csv beside out
  std::uint64_t seed = 1;
  int wallets = 100;
  int nfts = 10;
  std::uint64_t trades = 0;
  std::int64_t start_time = 1'500'000'000;
  double horizon_days = 365.0;
  int rings = 0;
  int ring_size = 20;
  int ring_nfts = 1;
  int traversals = 2;
  double period_hours = 4.0;
  double jitter_hours = 0.5;
  double band_hit_ratio = 1.0;
  double price_base = 10.0;
  double price_step = 0.05;
  bool allow_buyer_reuse = false;
  bool randomize_case = false;
  std::uint64_t corrupt_rows = 0;
  double contamination_rate = 0.0;
};

struct VerifyOptions {
  int seeds = 200;
  std::uint64_t seed = 42;  // base seed for instance generation
  int max_wallets = 12;
  int max_nfts = 5;
  int max_trades = 60;
  int min_hops = 0;  // 0 = check both 1 and 2
};

struct StatsOptions {
  std::string input;
  std::string format = "csv";
  bool strict = false;
  bool strict_chain = false;
  std::string export_canonical;  // optional snapshot path
};

int run_cycles(const CyclesOptions& opt);
int run_report(const ReportOptions& opt);
int run_simulate(const SimulateOptions& opt);
int run_verify(const VerifyOptions& opt);
int run_stats(const StatsOptions& opt);

}  // namespace nftcli
