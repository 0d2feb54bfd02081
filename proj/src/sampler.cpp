#include "netrepo/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "netrepo/rng.hpp"

namespace netrepo {

namespace {

void check_fraction(double fraction) {
  if (!(fraction > 0 && fraction <= 1)) throw std::invalid_argument("sample fraction must be in (0, 1]");
}

// First `k` entries of a seeded partial Fisher-Yates shuffle of [0, count).
std::vector<std::uint64_t> choose_without_replacement(std::uint64_t count, std::uint64_t k, Rng& rng) {
  std::vector<std::uint64_t> pool(count);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::uint64_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(count - i)]);
  pool.resize(k);
  return pool;
}

Sample induced(const Graph& g, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  Sample s;
  s.graph = g.induced_subgraph(nodes);
  s.original_ids = std::move(nodes);
  return s;
}

}  // namespace

std::string_view sample_method_name(SampleMethod m) {
  switch (m) {
    case SampleMethod::node: return "node";
    case SampleMethod::edge: return "edge";
    case SampleMethod::induced_edge: return "induced_edge";
  }
  return "unknown";
}

std::optional<SampleMethod> sample_method_from_name(std::string_view name) {
  for (auto m : {SampleMethod::node, SampleMethod::edge, SampleMethod::induced_edge}) {
    if (sample_method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::uint64_t sample_budget(double fraction, std::uint64_t count) {
  const double raw = fraction * static_cast<double>(count);
  const double rounded = std::round(raw);
  const double want = std::abs(raw - rounded) < 1e-9 ? rounded : std::ceil(raw);
  return std::min<std::uint64_t>(count, static_cast<std::uint64_t>(std::max(0.0, want)));
}

Sample sample_node(const Graph& g, double fraction, std::uint64_t seed) {
  check_fraction(fraction);
  if (g.num_nodes() == 0) throw std::invalid_argument("node sampling needs at least one node");
  Rng rng(seed);
  auto picked = choose_without_replacement(g.num_nodes(), sample_budget(fraction, g.num_nodes()), rng);
  return induced(g, {picked.begin(), picked.end()});
}

Sample sample_edge(const Graph& g, double fraction, std::uint64_t seed) {
  check_fraction(fraction);
  if (g.num_edges() == 0) throw std::invalid_argument("edge sampling needs at least one edge");
  const auto edges = g.edge_list();
  Rng rng(seed);
  auto picked = choose_without_replacement(edges.size(), sample_budget(fraction, edges.size()), rng);
  std::sort(picked.begin(), picked.end());

  std::vector<NodeId> nodes;
  for (auto e : picked) {
    nodes.push_back(edges[e].first);
    nodes.push_back(edges[e].second);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<NodeId> local(g.num_nodes(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<NodeId>(i);
  std::vector<Edge> kept;
  kept.reserve(picked.size());
  for (auto e : picked) kept.emplace_back(local[edges[e].first], local[edges[e].second]);

  Sample s;
  s.graph = Graph::from_edges(static_cast<NodeId>(nodes.size()), kept);
  s.original_ids = std::move(nodes);
  return s;
}

Sample sample_induced_edge(const Graph& g, double fraction, std::uint64_t seed) {
  check_fraction(fraction);
  return sample_induced_edge_nodes(g, sample_budget(fraction, g.num_nodes()), seed);
}

Sample sample_induced_edge_nodes(const Graph& g, std::uint64_t node_budget, std::uint64_t seed) {
  if (g.num_edges() == 0) throw std::invalid_argument("induced edge sampling needs at least one edge");
  const NodeId n = g.num_nodes();
  const auto budget = std::min<std::uint64_t>(node_budget, n);
  const auto edges = g.edge_list();
  Rng rng(seed);

  std::vector<char> in(n, 0);
  std::vector<NodeId> nodes;
  nodes.reserve(budget);
  auto take = [&](NodeId v) {
    if (!in[v] && nodes.size() < budget) {
      in[v] = 1;
      nodes.push_back(v);
    }
  };
  // lazy Fisher-Yates over edges: stop as soon as the budget is met
  std::vector<std::uint64_t> pool(edges.size());
  std::iota(pool.begin(), pool.end(), 0);
  for (std::uint64_t i = 0; i < pool.size() && nodes.size() < budget; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    take(edges[pool[i]].first);
    take(edges[pool[i]].second);
  }
  // only reachable when isolated nodes are needed to fill the budget
  if (nodes.size() < budget) {
    std::vector<NodeId> rest;
    for (NodeId v = 0; v < n; ++v) {
      if (!in[v]) rest.push_back(v);
    }
    auto extra = choose_without_replacement(rest.size(), budget - nodes.size(), rng);
    for (auto i : extra) nodes.push_back(rest[i]);
  }
  return induced(g, std::move(nodes));
}

Sample sample(const Graph& g, SampleMethod method, double fraction, std::uint64_t seed) {
  switch (method) {
    case SampleMethod::node: return sample_node(g, fraction, seed);
    case SampleMethod::edge: return sample_edge(g, fraction, seed);
    case SampleMethod::induced_edge: return sample_induced_edge(g, fraction, seed);
  }
  throw std::invalid_argument("unknown sample method");
}

}  // namespace netrepo
