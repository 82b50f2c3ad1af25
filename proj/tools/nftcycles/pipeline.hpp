#pragma once

#include <string>
#include <utility>

#include "nftcycles/graph.hpp"
#include "nftcycles/ingest.hpp"

namespace nftcli {

nftcycles::TradeFormat format_from_name(const std::string& name);

// Shared ingest -> normalize -> build front half of the pipeline.
std::pair<nftcycles::TemporalBipartiteGraph, nftcycles::IngestReport> load_graph(
    const std::string& input_path, nftcycles::TradeFormat format, bool strict,
    nftcycles::TemporalBipartiteGraph::Mode mode);

}  // namespace nftcli
