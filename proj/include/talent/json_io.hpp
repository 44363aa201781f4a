#pragma once

#include <json.hpp>

#include "talent/classify.hpp"
#include "talent/connectivity.hpp"
#include "talent/element.hpp"
#include "talent/graph.hpp"
#include "talent/graph_classify.hpp"
#include "talent/rewrite.hpp"

namespace talent {

using nlohmann::json;

json graph_to_json(const Graph& g);
json element_to_json(const Graph& g, const Element& a);
json step_to_json(const Graph& g, const RewriteStep& s);
json chain_to_json(const Graph& g, const Chain& c);
/// Parses a chain serialized by chain_to_json; replayable by expand.
Chain chain_from_json(const Graph& g, const json& j);

json path_system_to_json(const Graph& g, const PathSystem& ps);
json stationary_partition_to_json(const Graph& g, const StationaryPartition& sp);
json classification_to_json(const Graph& g, const Classification& c);
json invariant_vector_to_json(const InvariantVector& v);
json lattice_to_json(const Graph& g, const PairLattice& lat);
json compare_report_to_json(const CompareReport& rep);

}  // namespace talent
