#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "nftcycles/errors.hpp"
#include "nftcycles/synth.hpp"
#include "nftcycles/version.hpp"
#include "util.hpp"

namespace nftcli {

using namespace nftcycles;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

int run_simulate(const SimulateOptions& opt) {
  SynthConfig config;
  config.seed = opt.seed;
  config.n_wallets = opt.wallets;
  config.n_nfts = opt.nfts;
  config.n_background_trades = opt.trades;
  config.start_time = opt.start_time;
  config.horizon_seconds = std::llround(opt.horizon_days * 86400.0);
  config.allow_buyer_reuse = opt.allow_buyer_reuse;
  config.randomize_wallet_case = opt.randomize_case;
  config.corrupt_rows = opt.corrupt_rows;
  config.contamination_rate = opt.contamination_rate;

  RingSpec ring;
  ring.ring_size = opt.ring_size;
  ring.nft_count = opt.ring_nfts;
  ring.traversal_count = opt.traversals;
  ring.period_seconds = seconds_from_hours(opt.period_hours);
  ring.jitter_seconds = seconds_from_hours(opt.jitter_hours);
  ring.price_base_usd = Money(std::llround(opt.price_base * double(kMoneyScale)));
  ring.price_step_usd = Money(std::llround(opt.price_step * double(kMoneyScale)));
  ring.band_hit_ratio = opt.band_hit_ratio;
  for (int r = 0; r < opt.rings; ++r) config.rings.push_back(ring);

  const fs::path out_path(opt.out);
  const fs::path labels_path =
      opt.labels.empty() ? out_path.parent_path() / "labels.csv" : fs::path(opt.labels);

  GroundTruth truth;
  std::string labels_text;
  write_file_atomic(out_path, [&](std::ostream& trades_out) {
    std::ostringstream labels_out;
    truth = generate_corpus(config, trades_out, &labels_out);
    labels_text = labels_out.str();
  });
  write_file_atomic(labels_path, [&](std::ostream& out) { out << labels_text; });

  json meta;
  meta["tool"] = "nftcycles";
  meta["version"] = std::string(kVersion);
  meta["command"] = "simulate";
  meta["params"] = {
      {"seed", opt.seed},
      {"wallets", opt.wallets},
      {"nfts", opt.nfts},
      {"trades", opt.trades},
      {"start_time", opt.start_time},
      {"horizon_days", opt.horizon_days},
      {"rings", opt.rings},
      {"ring_size", opt.ring_size},
      {"ring_nfts", opt.ring_nfts},
      {"traversals", opt.traversals},
      {"period_hours", opt.period_hours},
      {"jitter_hours", opt.jitter_hours},
      {"band_hit_ratio", opt.band_hit_ratio},
      {"price_base", opt.price_base},
      {"price_step", opt.price_step},
      {"allow_buyer_reuse", opt.allow_buyer_reuse},
      {"randomize_case", opt.randomize_case},
      {"corrupt_rows", opt.corrupt_rows},
      {"contamination_rate", opt.contamination_rate},
  };
  meta["outputs"] = {
      {"trades",
       {{"path", out_path.string()},
        {"rows", truth.total_rows},
        {"sha256", sha256_file(out_path)}}},
      {"labels", {{"path", labels_path.string()}, {"sha256", sha256_file(labels_path)}}},
  };
  write_file_atomic(out_path.string() + ".meta.json",
                    [&](std::ostream& out) { out << meta.dump(2) << '\n'; });

  std::cout << "wrote " << truth.total_rows << " rows to " << out_path.string() << " ("
            << truth.background_trades << " background, " << truth.corrupted_rows
            << " corrupted), labels: " << labels_path.string() << '\n';
  return 0;
}

}  // namespace nftcli
