#pragma once

// Slow, obviously-correct reference implementations used by the tests. None
// of these share code with the library beyond the Graph container.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "netrepo/graph.hpp"

namespace oracle {

using netrepo::Edge;
using netrepo::Graph;
using netrepo::NodeId;

using Matrix = std::vector<std::vector<bool>>;

inline Matrix adjacency(const Graph& g) {
  Matrix a(g.num_nodes(), std::vector<bool>(g.num_nodes(), false));
  for (auto [u, v] : g.edge_list()) a[u][v] = a[v][u] = true;
  return a;
}

// G(n, p) built with std::bernoulli_distribution, independent of the
// library generators.
inline Graph random_graph(NodeId n, double p, std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline Graph make_graph(NodeId n, std::initializer_list<Edge> edges) {
  std::vector<Edge> e(edges);
  return Graph::from_edges(n, e);
}

inline Graph clique(NodeId n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph::from_edges(n, e);
}

// Star with `leaves` leaves; node 0 is the center.
inline Graph star(NodeId leaves) {
  std::vector<Edge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

inline Graph path(NodeId n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph::from_edges(n, e);
}

inline Graph cycle(NodeId n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, e);
}

// Two K5s (nodes 0-4 and 5-9) joined by the edge 4-5.
inline Graph two_k5_bridge() {
  std::vector<Edge> e;
  for (NodeId base : {0u, 5u}) {
    for (NodeId u = 0; u < 5; ++u) {
      for (NodeId v = u + 1; v < 5; ++v) e.emplace_back(base + u, base + v);
    }
  }
  e.emplace_back(4, 5);
  return Graph::from_edges(10, e);
}

struct Triangles {
  std::vector<std::uint64_t> per_node;
  std::uint64_t total = 0;
};

// Every unordered triple.
inline Triangles triangles(const Graph& g) {
  const auto a = adjacency(g);
  const NodeId n = g.num_nodes();
  Triangles t{std::vector<std::uint64_t>(n, 0), 0};
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (!a[i][j]) continue;
      for (NodeId k = j + 1; k < n; ++k) {
        if (a[i][k] && a[j][k]) {
          ++t.total;
          ++t.per_node[i];
          ++t.per_node[j];
          ++t.per_node[k];
        }
      }
    }
  }
  return t;
}

// Core number of v is the largest k such that v survives repeated deletion
// of nodes with degree < k.
inline std::vector<std::uint32_t> core_numbers(const Graph& g) {
  const NodeId n = g.num_nodes();
  std::vector<std::uint32_t> core(n, 0);
  for (std::uint32_t k = 1;; ++k) {
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (NodeId v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        std::uint32_t d = 0;
        for (NodeId w : g.neighbors(v)) d += alive[w] ? 1 : 0;
        if (d < k) {
          alive[v] = false;
          changed = true;
        }
      }
    }
    bool any = false;
    for (NodeId v = 0; v < n; ++v) {
      if (alive[v]) {
        core[v] = k;
        any = true;
      }
    }
    if (!any) return core;
  }
}

// Wedges centered at v, enumerated pair by pair.
inline std::uint64_t wedges(const Graph& g, NodeId v) {
  std::uint64_t w = 0;
  const auto nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) ++w;
  }
  return w;
}

// Closed wedges centered at v over all wedges centered at v (0 if none).
inline double local_clustering(const Graph& g, NodeId v) {
  const auto nb = g.neighbors(v);
  std::uint64_t closed = 0, total = 0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      ++total;
      if (g.has_edge(nb[i], nb[j])) ++closed;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(total);
}

// Closed wedges over all wedges, counted over every center.
inline double global_clustering(const Graph& g) {
  std::uint64_t closed = 0, total = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        ++total;
        if (g.has_edge(nb[i], nb[j])) ++closed;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(total);
}

inline std::uint32_t component_count(const Graph& g) {
  std::vector<bool> seen(g.num_nodes(), false);
  std::uint32_t count = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<NodeId> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
  }
  return count;
}

// Maximum clique size via Bron-Kerbosch without pivoting.
inline std::uint32_t max_clique(const Graph& g) {
  const auto a = adjacency(g);
  std::uint32_t best = 0;
  auto recurse = [&](auto&& self, std::uint32_t size, std::vector<NodeId> p, std::vector<NodeId> x) -> void {
    if (p.empty() && x.empty()) {
      best = std::max(best, size);
      return;
    }
    while (!p.empty()) {
      const NodeId v = p.back();
      std::vector<NodeId> np, nx;
      for (NodeId w : p) {
        if (a[v][w]) np.push_back(w);
      }
      for (NodeId w : x) {
        if (a[v][w]) nx.push_back(w);
      }
      self(self, size + 1, np, nx);
      p.pop_back();
      x.push_back(v);
    }
  };
  std::vector<NodeId> all(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) all[v] = v;
  recurse(recurse, 0, all, {});
  return best;
}

// Two-pass Pearson correlation over the 2m directed edge endpoints.
inline std::optional<double> assortativity(const Graph& g) {
  std::vector<double> xs, ys;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      xs.push_back(g.degree(u));
      ys.push_back(g.degree(v));
    }
  }
  if (xs.empty()) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

// Newman modularity from the pair-sum definition.
inline std::optional<double> modularity(const Graph& g, const std::vector<std::uint32_t>& label) {
  const double m = static_cast<double>(g.num_edges());
  if (m == 0) return std::nullopt;
  double q = 0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j = 0; j < g.num_nodes(); ++j) {
      if (label[i] != label[j]) continue;
      const double aij = g.has_edge(i, j) ? 1.0 : 0.0;
      q += aij - static_cast<double>(g.degree(i)) * g.degree(j) / (2 * m);
    }
  }
  return q / (2 * m);
}

}  // namespace oracle
