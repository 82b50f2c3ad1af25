#include <filesystem>
#include <iostream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "nftcycles/cycles.hpp"
#include "nftcycles/version.hpp"
#include "pipeline.hpp"
#include "util.hpp"

namespace nftcli {

using namespace nftcycles;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

int run_cycles(const CyclesOptions& opt) {
  const TradeFormat format = format_from_name(opt.format);
  const auto mode = opt.strict_chain ? TemporalBipartiteGraph::Mode::kStrictChain
                                     : TemporalBipartiteGraph::Mode::kLenient;

  const std::string input_digest = sha256_file(opt.input);
  auto [graph, report] = load_graph(opt.input, format, opt.strict, mode);

  CycleTableOptions table_options;
  table_options.min_hops = opt.min_hops;
  table_options.appreciating_only = opt.appreciating_only;
  table_options.threads = opt.threads;
  std::vector<Cycle> cycles = cycle_table(graph, table_options);

  write_file_atomic(opt.out, [&](std::ostream& out) { write_cycles_csv(out, cycles); });

  json meta;
  meta["tool"] = "nftcycles";
  meta["version"] = std::string(kVersion);
  meta["command"] = "cycles";
  meta["params"] = {
      {"format", opt.format},
      {"min_hops", opt.min_hops},
      {"mode", opt.strict_chain ? "strict_chain" : "lenient"},
      {"appreciating_only", opt.appreciating_only},
      {"strict", opt.strict},
      {"threads", opt.threads},
      {"pairing_rule", "consecutive_occurrence"},
      {"ordering_key", json::array({"timestamp", "block", "tx_id"})},
  };
  meta["input"] = {
      {"path", opt.input},
      {"sha256", input_digest},
      {"records_accepted", report.records_accepted},
      {"records_rejected", report.records_rejected},
      {"rejection_reasons", report.rejection_reasons},
  };
  meta["output"] = {
      {"path", opt.out},
      {"rows", cycles.size()},
      {"sha256", sha256_file(opt.out)},
  };
  write_file_atomic(opt.out + ".meta.json",
                    [&](std::ostream& out) { out << meta.dump(2) << '\n'; });

  std::cout << "accepted: " << report.records_accepted << " rejected: " << report.records_rejected
            << " nfts: " << graph.paths().size() << " cycles: " << cycles.size() << '\n';
  return 0;
}

}  // namespace nftcli
