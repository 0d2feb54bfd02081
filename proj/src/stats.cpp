#include "netrepo/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace netrepo {

// ---------------------------------------------------------------------------
// Column and field registries

const std::vector<std::string>& NodeStatsTable::column_names() {
  static const std::vector<std::string> names{"degree", "triangles", "local_clustering", "kcore",
                                              "wedges"};
  return names;
}

bool NodeStatsTable::has_column(std::string_view name) {
  const auto& names = column_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

double NodeStatsTable::value(std::string_view column, NodeId v) const {
  if (column == "degree") return degree.at(v);
  if (column == "triangles") return static_cast<double>(triangles.at(v));
  if (column == "local_clustering") return local_clustering.at(v);
  if (column == "kcore") return kcore.at(v);
  if (column == "wedges") return static_cast<double>(wedges.at(v));
  throw std::invalid_argument("unknown node statistic '" + std::string(column) + "'");
}

const std::vector<std::string>& GraphStats::field_names() {
  static const std::vector<std::string> names{
      "n",           "m",           "density",           "max_degree",
      "avg_degree",  "total_triangles", "total_wedges",  "avg_clustering",
      "global_clustering", "max_kcore", "assortativity", "max_clique_lb",
      "components"};
  return names;
}

bool GraphStats::has_field(std::string_view name) {
  const auto& names = field_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::optional<double> GraphStats::value(std::string_view field) const {
  if (field == "n") return static_cast<double>(n);
  if (field == "m") return static_cast<double>(m);
  if (field == "density") return density;
  if (field == "max_degree") return max_degree;
  if (field == "avg_degree") return avg_degree;
  if (field == "total_triangles") return static_cast<double>(total_triangles);
  if (field == "total_wedges") return static_cast<double>(total_wedges);
  if (field == "avg_clustering") return avg_clustering;
  if (field == "global_clustering") return global_clustering;
  if (field == "max_kcore") return max_kcore;
  if (field == "assortativity") return assortativity;
  if (field == "max_clique_lb") return max_clique_lb;
  if (field == "components") return components;
  throw std::invalid_argument("unknown graph statistic '" + std::string(field) + "'");
}

// ---------------------------------------------------------------------------
// Triangles

TriangleCounts count_triangles(const Graph& g, unsigned workers) {
  const NodeId n = g.num_nodes();
  TriangleCounts out;
  out.per_node.assign(n, 0);
  if (n == 0) return out;

  // Orient every edge from lower to higher (degree, id) rank. Each triangle
  // is then found exactly once, at its lowest-ranked vertex.
  auto ranks_below = [&](NodeId a, NodeId b) {
    auto da = g.degree(a), db = g.degree(b);
    return da < db || (da == db && a < b);
  };
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    std::uint64_t c = 0;
    for (NodeId v : g.neighbors(u)) c += ranks_below(u, v);
    offsets[u + 1] = offsets[u] + c;
  }
  std::vector<NodeId> forward(offsets[n]);
  for (NodeId u = 0; u < n; ++u) {
    auto pos = offsets[u];
    for (NodeId v : g.neighbors(u)) {
      if (ranks_below(u, v)) forward[pos++] = v;
    }
  }
  auto out_of = [&](NodeId u) {
    return std::span<const NodeId>(forward.data() + offsets[u], forward.data() + offsets[u + 1]);
  };

  auto& counts = out.per_node;
  parallel_for(n, workers, [&](std::size_t ui) {
    const auto u = static_cast<NodeId>(ui);
    auto nu = out_of(u);
    std::uint64_t found_u = 0;
    for (NodeId v : nu) {
      auto nv = out_of(v);
      std::uint64_t found_v = 0;
      auto a = nu.begin();
      auto b = nv.begin();
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          std::atomic_ref<std::uint64_t>(counts[*a]).fetch_add(1, std::memory_order_relaxed);
          ++found_v;
          ++a;
          ++b;
        }
      }
      if (found_v) {
        std::atomic_ref<std::uint64_t>(counts[v]).fetch_add(found_v, std::memory_order_relaxed);
        found_u += found_v;
      }
    }
    if (found_u) std::atomic_ref<std::uint64_t>(counts[u]).fetch_add(found_u, std::memory_order_relaxed);
  });

  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  out.total = sum / 3;
  return out;
}

// ---------------------------------------------------------------------------
// k-core (bucket peeling)

CoreDecomposition kcore_decomposition(const Graph& g) {
  const NodeId n = g.num_nodes();
  CoreDecomposition out;
  out.core.assign(n, 0);
  if (n == 0) return out;

  const std::uint32_t max_deg = g.max_degree();
  std::vector<std::uint32_t> deg = g.degrees();
  std::vector<NodeId> bin(max_deg + 2, 0);
  for (auto d : deg) ++bin[d + 1];
  std::partial_sum(bin.begin(), bin.end(), bin.begin());
  // bin[d] = first position of degree-d nodes in `order`
  std::vector<NodeId> order(n), pos(n);
  {
    std::vector<NodeId> fill(bin.begin(), bin.end() - 1);
    for (NodeId v = 0; v < n; ++v) {
      pos[v] = fill[deg[v]]++;
      order[pos[v]] = v;
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    NodeId v = order[i];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::uint32_t du = deg[u];
        NodeId pu = pos[u];
        NodeId pw = bin[du];
        NodeId w = order[pw];
        if (u != w) {
          order[pu] = w;
          pos[w] = pu;
          order[pw] = u;
          pos[u] = pw;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  out.core = std::move(deg);
  out.max_core = *std::max_element(out.core.begin(), out.core.end());
  return out;
}

// ---------------------------------------------------------------------------
// Clustering

Clustering clustering_coefficients(const Graph& g, const std::vector<std::uint64_t>& triangles) {
  const NodeId n = g.num_nodes();
  if (triangles.size() != n) throw std::invalid_argument("triangle vector size mismatch");
  Clustering out;
  out.local.assign(n, 0.0);
  out.wedges.assign(n, 0);
  std::uint64_t tri_sum = 0;
  double local_sum = 0;
  for (NodeId v = 0; v < n; ++v) {
    std::uint64_t d = g.degree(v);
    std::uint64_t w = d * (d > 0 ? d - 1 : 0) / 2;
    out.wedges[v] = w;
    out.total_wedges += w;
    tri_sum += triangles[v];
    if (w > 0) out.local[v] = static_cast<double>(triangles[v]) / static_cast<double>(w);
    local_sum += out.local[v];
  }
  if (n > 0) out.average = local_sum / static_cast<double>(n);
  // sum of per-node triangles is 3x the distinct triangle count
  if (out.total_wedges > 0) {
    out.global = static_cast<double>(tri_sum) / static_cast<double>(out.total_wedges);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Assortativity

__extension__ using Int128 = __int128;

std::optional<double> assortativity(const Graph& g) {
  if (g.num_edges() == 0) return std::nullopt;
  // Sums over both orientations of every edge; x and y share one marginal.
  Int128 count = 0, sum = 0, sum_sq = 0, sum_xy = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const Int128 du = g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      const Int128 dv = g.degree(v);
      ++count;
      sum += du;
      sum_sq += du * du;
      sum_xy += du * dv;
    }
  }
  const Int128 numerator = count * sum_xy - sum * sum;
  const Int128 denominator = count * sum_sq - sum * sum;
  if (denominator == 0) return std::nullopt;
  return static_cast<double>(static_cast<long double>(numerator) / static_cast<long double>(denominator));
}

// ---------------------------------------------------------------------------
// Max clique lower bound

std::uint32_t max_clique_lower_bound(const Graph& g, const CoreDecomposition& cores) {
  const NodeId n = g.num_nodes();
  if (n == 0) return 0;
  if (g.num_edges() == 0) return 1;

  auto before = [&](NodeId a, NodeId b) {
    if (cores.core[a] != cores.core[b]) return cores.core[a] > cores.core[b];
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  };
  std::vector<NodeId> seeds(n);
  std::iota(seeds.begin(), seeds.end(), 0);
  std::sort(seeds.begin(), seeds.end(), before);

  std::uint32_t best = 2;
  std::vector<NodeId> candidates, next;
  for (NodeId v : seeds) {
    // a clique larger than `best` needs every member in the best-core or higher
    if (cores.core[v] + 1 <= best) break;
    candidates.clear();
    for (NodeId u : g.neighbors(v)) {
      if (cores.core[u] >= best) candidates.push_back(u);
    }
    std::sort(candidates.begin(), candidates.end(), before);
    std::uint32_t size = 1;
    while (!candidates.empty() && size + candidates.size() > best) {
      NodeId pick = candidates.front();
      ++size;
      next.clear();
      auto nb = g.neighbors(pick);
      for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (std::binary_search(nb.begin(), nb.end(), candidates[i])) next.push_back(candidates[i]);
      }
      candidates.swap(next);
    }
    best = std::max(best, size);
  }
  return best;
}

std::uint32_t max_clique_lower_bound(const Graph& g) {
  return max_clique_lower_bound(g, kcore_decomposition(g));
}

// ---------------------------------------------------------------------------
// Full stack

StatsResult compute_all(const Graph& g, unsigned workers) {
  StatsResult out;
  const NodeId n = g.num_nodes();
  auto tri = count_triangles(g, workers);
  auto cores = kcore_decomposition(g);
  auto clus = clustering_coefficients(g, tri.per_node);

  auto& gs = out.graph;
  gs.n = n;
  gs.m = g.num_edges();
  if (n >= 2) {
    gs.density = 2.0 * static_cast<double>(gs.m) /
                 (static_cast<double>(n) * static_cast<double>(n - 1));
  }
  gs.max_degree = g.max_degree();
  gs.avg_degree = n > 0 ? 2.0 * static_cast<double>(gs.m) / static_cast<double>(n) : 0.0;
  gs.total_triangles = tri.total;
  gs.total_wedges = clus.total_wedges;
  gs.avg_clustering = clus.average;
  gs.global_clustering = clus.global;
  gs.max_kcore = cores.max_core;
  gs.assortativity = assortativity(g);
  gs.max_clique_lb = max_clique_lower_bound(g, cores);
  gs.components = connected_components(g).count;

  auto& ns = out.nodes;
  ns.degree = g.degrees();
  ns.triangles = std::move(tri.per_node);
  ns.local_clustering = std::move(clus.local);
  ns.kcore = std::move(cores.core);
  ns.wedges = std::move(clus.wedges);
  return out;
}

// ---------------------------------------------------------------------------
// Distributions

Distribution distribution(const NodeStatsTable& stats, std::string_view column) {
  if (!NodeStatsTable::has_column(column)) {
    throw std::invalid_argument("unknown node statistic '" + std::string(column) + "'");
  }
  const std::size_t n = stats.size();
  if (n == 0) throw std::invalid_argument("no nodes");

  Distribution d;
  d.statistic = std::string(column);
  std::vector<std::uint64_t> counts;
  if (column == "local_clustering") {
    d.binned = true;
    std::vector<std::uint64_t> bins(kClusteringBins, 0);
    for (double x : stats.local_clustering) {
      auto b = static_cast<int>(std::floor(x * kClusteringBins));
      ++bins[std::clamp(b, 0, kClusteringBins - 1)];
    }
    for (int b = 0; b < kClusteringBins; ++b) {
      if (bins[b] == 0) continue;
      d.values.push_back(static_cast<double>(b) / kClusteringBins);
      counts.push_back(bins[b]);
    }
  } else {
    std::vector<double> xs(n);
    for (std::size_t v = 0; v < n; ++v) xs[v] = stats.value(column, static_cast<NodeId>(v));
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j < n && xs[j] == xs[i]) ++j;
      d.values.push_back(xs[i]);
      counts.push_back(j - i);
      i = j;
    }
  }

  const auto total = static_cast<double>(n);
  std::uint64_t below = 0;
  d.pdf.reserve(counts.size());
  d.cdf.reserve(counts.size());
  d.ccdf.reserve(counts.size());
  for (auto c : counts) {
    d.pdf.push_back(static_cast<double>(c) / total);
    d.ccdf.push_back(static_cast<double>(n - below) / total);
    below += c;
    d.cdf.push_back(static_cast<double>(below) / total);
  }
  return d;
}

}  // namespace netrepo
