#include <algorithm>
#include <iostream>
#include <set>
#include <vector>

#include "commands.hpp"
#include "nftcycles/cycles.hpp"
#include "nftcycles/errors.hpp"
#include "nftcycles/ingest.hpp"
#include "nftcycles/oracle.hpp"
#include "nftcycles/synth.hpp"

namespace nftcli {

using namespace nftcycles;

namespace {

std::set<oracle::OracleCycle> as_oracle_set(const std::vector<Cycle>& cycles) {
  std::set<oracle::OracleCycle> out;
  for (const Cycle& c : cycles) {
    out.insert({c.nft_id, c.wallet, c.start_tx, c.end_tx});
  }
  return out;
}

void print_difference(const std::set<oracle::OracleCycle>& fast,
                      const std::set<oracle::OracleCycle>& brute) {
  auto dump = [](const char* label, const std::set<oracle::OracleCycle>& only) {
    int shown = 0;
    for (const auto& c : only) {
      std::cerr << "  " << label << " (" << c.nft_id << ", " << c.wallet << ", " << c.start_tx
                << ", " << c.end_tx << ")\n";
      if (++shown >= 5) break;
    }
  };
  std::set<oracle::OracleCycle> fast_only;
  std::set_difference(fast.begin(), fast.end(), brute.begin(), brute.end(),
                      std::inserter(fast_only, fast_only.end()));
  std::set<oracle::OracleCycle> brute_only;
  std::set_difference(brute.begin(), brute.end(), fast.begin(), fast.end(),
                      std::inserter(brute_only, brute_only.end()));
  dump("fast path only:", fast_only);
  dump("oracle only:   ", brute_only);
}

}  // namespace

int run_verify(const VerifyOptions& opt) {
  if (opt.seeds < 1) throw ConfigError("--seeds must be >= 1");
  if (opt.min_hops < 0) throw ConfigError("--min-hops must be >= 1");

  std::vector<int> hop_settings;
  if (opt.min_hops == 0) {
    hop_settings = {1, 2};
  } else {
    hop_settings = {opt.min_hops};
  }

  std::uint64_t instances = 0;
  for (int i = 0; i < opt.seeds; ++i) {
    std::vector<TradeRecord> records =
        random_instance(opt.seed + std::uint64_t(i), opt.max_wallets, opt.max_nfts,
                        opt.max_trades);
    normalize_wallets(records);

    for (int min_hops : hop_settings) {
      TemporalBipartiteGraph graph =
          build_graph(records, TemporalBipartiteGraph::Mode::kLenient);
      CycleTableOptions options;
      options.min_hops = min_hops;
      auto fast = as_oracle_set(cycle_table(graph, options));
      auto brute = oracle::brute_force_cycles(records, min_hops);
      ++instances;
      if (fast != brute) {
        std::cerr << "MISMATCH at seed " << opt.seed + std::uint64_t(i) << " min_hops "
                  << min_hops << " (" << records.size() << " trades): fast=" << fast.size()
                  << " oracle=" << brute.size() << '\n';
        print_difference(fast, brute);
        return 1;
      }
    }
  }
  std::cout << "verified " << opt.seeds << " instances (" << instances
            << " runs): all cycle sets match the brute-force oracle\n";
  return 0;
}

}  // namespace nftcli
