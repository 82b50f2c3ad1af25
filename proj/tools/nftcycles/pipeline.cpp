#include "pipeline.hpp"

#include <fstream>

#include "nftcycles/errors.hpp"

namespace nftcli {

using namespace nftcycles;

TradeFormat format_from_name(const std::string& name) {
  if (name == "csv") return TradeFormat::kCsv;
  if (name == "jsonl") return TradeFormat::kJsonl;
  throw ConfigError("unknown format: " + name + " (expected csv or jsonl)");
}

std::pair<TemporalBipartiteGraph, IngestReport> load_graph(const std::string& input_path,
                                                           TradeFormat format, bool strict,
                                                           TemporalBipartiteGraph::Mode mode) {
  std::ifstream in(input_path, std::ios::binary);
  if (!in) throw IngestError("cannot open input file: " + input_path);

  GraphBuilder builder;
  ParseOptions options;
  options.strict = strict;
  IngestReport report = parse_trades(
      in, format,
      [&](TradeRecord&& rec) {
        normalize_wallets(rec);
        builder.add(std::move(rec));
      },
      options);
  return {builder.finalize(mode), report};
}

}  // namespace nftcli
