#pragma once

#include <json.hpp>

#include "hasm/lattice_graphs.hpp"
#include "hasm/renewal.hpp"

namespace hasm {

// {"vertices":[{"id","x","y","tags"}], "edges":[{"u","v","w","tags"}]} with
// ids derived from coordinates, so re-exports are byte-identical.
nlohmann::json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j);

nlohmann::json trace_to_json(const ReductionTrace& t);

}  // namespace hasm
