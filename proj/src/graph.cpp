#include "netrepo/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace netrepo {

Graph Graph::from_edges(NodeId n, std::span<const Edge> edges, NormalizationReport* report) {
  NormalizationReport rep;
  rep.input_edges = edges.size();

  std::vector<Edge> pairs;
  pairs.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw std::out_of_range("edge endpoint " + std::to_string(std::max(a, b)) +
                              " out of range for " + std::to_string(n) + " nodes");
    }
    if (a == b) {
      ++rep.self_loops_dropped;
      continue;
    }
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end());
  auto last = std::unique(pairs.begin(), pairs.end());
  rep.duplicates_merged = static_cast<std::uint64_t>(pairs.end() - last);
  pairs.erase(last, pairs.end());

  Graph g;
  g.n_ = n;
  g.m_ = pairs.size();
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [a, b] : pairs) {
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(2 * pairs.size());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // pairs are sorted by (a, b): every list receives its entries in ascending
  // order, lower neighbors (from the b side) before higher ones.
  for (const auto& [a, b] : pairs) g.adjacency_[cursor[b]++] = a;
  for (const auto& [a, b] : pairs) g.adjacency_[cursor[a]++] = b;

  if (report) *report = rep;
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(degree(u) <= degree(v) ? u : v);
  NodeId target = degree(u) <= degree(v) ? v : u;
  return std::binary_search(nb.begin(), nb.end(), target);
}

std::uint32_t Graph::max_degree() const {
  std::uint32_t best = 0;
  for (NodeId v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<std::uint32_t> Graph::degrees() const {
  std::vector<std::uint32_t> d(n_);
  for (NodeId v = 0; v < n_; ++v) d[v] = degree(v);
  return d;
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (NodeId u = 0; u < n_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string Graph::dump() const {
  std::string out = "#nodes " + std::to_string(n_) + "\n";
  out.reserve(out.size() + m_ * 14);
  for (NodeId u = 0; u < n_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u >= v) continue;
      out += std::to_string(u);
      out += ' ';
      out += std::to_string(v);
      out += '\n';
    }
  }
  return out;
}

Graph Graph::induced_subgraph(std::span<const NodeId> nodes) const {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(n_, kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= n_) throw std::out_of_range("induced_subgraph: node out of range");
    local[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId w : neighbors(nodes[i])) {
      NodeId j = local[w];
      if (j != kAbsent && i < j) edges.emplace_back(static_cast<NodeId>(i), j);
    }
  }
  return from_edges(static_cast<NodeId>(nodes.size()), edges);
}

Components connected_components(const Graph& g) {
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  Components c;
  c.id.assign(g.num_nodes(), kUnset);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (c.id[s] != kUnset) continue;
    c.id[s] = c.count;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (c.id[v] == kUnset) {
          c.id[v] = c.count;
          stack.push_back(v);
        }
      }
    }
    ++c.count;
  }
  return c;
}

}  // namespace netrepo
