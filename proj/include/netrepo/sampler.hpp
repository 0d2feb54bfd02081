#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "netrepo/graph.hpp"

namespace netrepo {

enum class SampleMethod { node, edge, induced_edge };

std::string_view sample_method_name(SampleMethod m);
std::optional<SampleMethod> sample_method_from_name(std::string_view name);

struct Sample {
  Graph graph;
  std::vector<NodeId> original_ids;  // sample node i is original node original_ids[i]; ascending
};

// ceil(fraction * count) clamped to [0, count], tolerant of rounding noise.
std::uint64_t sample_budget(double fraction, std::uint64_t count);

// Uniform node sample without replacement, then the induced subgraph.
Sample sample_node(const Graph& g, double fraction, std::uint64_t seed);

// Uniform edge sample; nodes are the endpoints of sampled edges.
Sample sample_edge(const Graph& g, double fraction, std::uint64_t seed);

// Totally-induced edge sampling: draw edges uniformly until the node budget
// ceil(fraction * n) is met, then induce every original edge among them.
Sample sample_induced_edge(const Graph& g, double fraction, std::uint64_t seed);
// Same, with the node budget given directly (clamped to n).
Sample sample_induced_edge_nodes(const Graph& g, std::uint64_t node_budget, std::uint64_t seed);

Sample sample(const Graph& g, SampleMethod method, double fraction, std::uint64_t seed);

}  // namespace netrepo
