#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netrepo {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

struct NormalizationReport {
  std::uint64_t input_edges = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_merged = 0;
};

// Immutable undirected simple graph in CSR form. Neighbor lists are sorted
// ascending, contain no self-loops and no duplicates, and are symmetric.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  // Normalizes an arbitrary edge sequence over nodes [0, n). Self-loops are
  // dropped and duplicate or reciprocal edges merged; counts go to `report`.
  // Throws std::out_of_range if an endpoint is >= n.
  static Graph from_edges(NodeId n, std::span<const Edge> edges,
                          NormalizationReport* report = nullptr);

  NodeId num_nodes() const { return n_; }
  std::uint64_t num_edges() const { return m_; }

  std::uint32_t degree(NodeId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  bool has_edge(NodeId u, NodeId v) const;

  std::uint32_t max_degree() const;
  std::vector<std::uint32_t> degrees() const;

  // Each undirected edge once as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edge_list() const;

  // Canonical text dump: "#nodes N" header then one "u v" line per edge.
  std::string dump() const;

  // Subgraph induced by `nodes` (original ids, any order). Node i of the
  // result corresponds to nodes[i].
  Graph induced_subgraph(std::span<const NodeId> nodes) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  NodeId n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> adjacency_;
};

struct Components {
  std::vector<std::uint32_t> id;  // dense in [0, count), numbered by smallest member
  std::uint32_t count = 0;
};

Components connected_components(const Graph& g);

}  // namespace netrepo
