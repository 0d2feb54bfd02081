#pragma once

#include <string>

#include "json.hpp"

#include "netrepo/clustering.hpp"
#include "netrepo/generators.hpp"
#include "netrepo/graph.hpp"
#include "netrepo/layout.hpp"
#include "netrepo/sampler.hpp"
#include "netrepo/stats.hpp"

namespace netrepo {

using nlohmann::json;

// Flat object, snake_case keys; undefined aggregates are null.
json to_json(const GraphStats& s);
GraphStats graph_stats_from_json(const json& j);

// Columnar: one array per statistic.
json to_json(const NodeStatsTable& t);
NodeStatsTable node_stats_from_json(const json& j);

json to_json(const Distribution& d);
json to_json(const NodeLabeling& l);
json to_json(const NormalizationReport& r);
json to_json(const std::vector<Point>& layout);

json to_json(const GeneratorConfig& c);
// Throws InvalidConfig listing every problem found.
GeneratorConfig generator_config_from_json(const json& j);

// Stable text form used for stats output by both the CLI and the service.
std::string dump_stats(const GraphStats& s);

}  // namespace netrepo
