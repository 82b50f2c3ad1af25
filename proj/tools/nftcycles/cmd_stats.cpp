#include <iostream>

#include "commands.hpp"
#include "nftcycles/graph.hpp"
#include "pipeline.hpp"
#include "util.hpp"

namespace nftcli {

using namespace nftcycles;

int run_stats(const StatsOptions& opt) {
  const auto mode = opt.strict_chain ? TemporalBipartiteGraph::Mode::kStrictChain
                                     : TemporalBipartiteGraph::Mode::kLenient;
  auto [graph, report] = load_graph(opt.input, format_from_name(opt.format), opt.strict, mode);
  const GraphStats stats = graph.stats();

  std::cout << "nfts: " << stats.nft_count << '\n';
  std::cout << "wallets: " << stats.wallet_count << '\n';
  std::cout << "trades: " << stats.trade_count << '\n';
  std::cout << "chain_breaks: " << stats.chain_break_count << '\n';
  if (stats.time_range) {
    std::cout << "time_range: " << stats.time_range->first << ".." << stats.time_range->second
              << '\n';
  } else {
    std::cout << "time_range: empty\n";
  }
  std::cout << "rejected_rows: " << report.records_rejected << '\n';

  if (!opt.export_canonical.empty()) {
    write_file_atomic(opt.export_canonical,
                      [&](std::ostream& out) { export_canonical_csv(graph, out); });
    std::cout << "canonical snapshot: " << opt.export_canonical << '\n';
  }
  return 0;
}

}  // namespace nftcli
