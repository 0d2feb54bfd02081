#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "netrepo/clustering.hpp"
#include "netrepo/generators.hpp"
#include "netrepo/stats.hpp"
#include "oracles.hpp"

using namespace netrepo;

namespace {

using Partition = std::set<std::set<NodeId>>;

Partition partition_of(const std::vector<std::uint32_t>& labels) {
  std::map<std::uint32_t, std::set<NodeId>> groups;
  for (NodeId v = 0; v < labels.size(); ++v) groups[labels[v]].insert(v);
  Partition out;
  for (auto& [l, members] : groups) out.insert(members);
  return out;
}

Graph permuted(const Graph& g, const std::vector<NodeId>& perm) {
  std::vector<Edge> edges;
  for (auto [a, b] : g.edge_list()) edges.emplace_back(perm[a], perm[b]);
  return Graph::from_edges(g.num_nodes(), edges);
}

NodeLabeling roles_of(const Graph& g, std::optional<std::uint32_t> k, std::uint64_t seed = 1) {
  return discover_roles(extract_role_features(g, compute_all(g, 1).nodes), k, seed);
}

void check_dense(const NodeLabeling& l) {
  std::set<std::uint32_t> seen(l.labels.begin(), l.labels.end());
  CHECK(seen.size() == l.k);
  if (!seen.empty()) CHECK(*seen.rbegin() == l.k - 1);
}

}  // namespace

TEST_CASE("label propagation splits two bridged K5s") {
  const auto g = oracle::two_k5_bridge();
  const Partition expected{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto l = detect_communities(g, seed);
    CHECK(l.k == 2);
    CHECK(partition_of(l.labels) == expected);
    check_dense(l);
  }
}

TEST_CASE("label propagation closed cases") {
  const auto k4 = detect_communities(oracle::clique(4), 3);
  CHECK(k4.k == 1);
  CHECK(*k4.quality == doctest::Approx(0.0));
  const auto empty = detect_communities(oracle::make_graph(5, {}), 3);
  CHECK(empty.k == 5);
  CHECK(empty.labels == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  CHECK_FALSE(empty.quality.has_value());
  CHECK_THROWS_AS(detect_communities(Graph(), 1), std::invalid_argument);
}

TEST_CASE("label propagation is deterministic per seed and dense") {
  const auto g = gen_block_chung_lu(std::vector<NodeId>{40, 40, 40}, std::vector<double>(120, 6.0), 0.1, 2).graph;
  const auto a = detect_communities(g, 9);
  const auto b = detect_communities(g, 9);
  CHECK(a.labels == b.labels);
  check_dense(a);
  CHECK(*a.quality == doctest::Approx(*oracle::modularity(g, a.labels)).epsilon(1e-12));
}

TEST_CASE("communities are equivariant under node relabeling") {
  const auto g = oracle::two_k5_bridge();
  std::vector<NodeId> perm{7, 2, 9, 0, 5, 3, 8, 1, 6, 4};
  const auto h = permuted(g, perm);
  const auto lg = detect_communities(g, 4);
  const auto lh = detect_communities(h, 4);
  Partition mapped;
  for (const auto& group : partition_of(lg.labels)) {
    std::set<NodeId> m;
    for (NodeId v : group) m.insert(perm[v]);
    mapped.insert(m);
  }
  CHECK(mapped == partition_of(lh.labels));
}

TEST_CASE("modularity") {
  const auto g = oracle::two_k5_bridge();
  const std::vector<std::uint32_t> one(10, 0);
  CHECK(*modularity(g, one) == doctest::Approx(0.0).epsilon(1e-15));

  std::vector<Edge> edges = g.edge_list();
  edges.erase(std::find(edges.begin(), edges.end(), Edge{4, 5}));
  const auto split = Graph::from_edges(10, edges);
  const std::vector<std::uint32_t> halves{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  CHECK(*modularity(split, halves) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(modularity(oracle::make_graph(3, {}), std::vector<std::uint32_t>{0, 1, 2}).has_value());

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = oracle::random_graph(50, 0.1, seed);
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    std::vector<std::uint32_t> labels(50);
    for (auto& l : labels) l = rng() % 4;
    const double q = *modularity(r, labels);
    CHECK(std::abs(q - *oracle::modularity(r, labels)) <= 1e-12);
    CHECK(std::abs(q) < 0.2);
    CHECK(q >= -0.5);
  }
}

TEST_CASE("role features have 18 standardized columns") {
  const auto g = oracle::random_graph(40, 0.15, 3);
  const auto f = extract_role_features(g, compute_all(g).nodes);
  CHECK(f.cols() == 18);
  CHECK(f.rows == 40);
  for (std::size_t c = 0; c < f.cols(); ++c) {
    double mean = 0, sq = 0;
    for (std::size_t r = 0; r < f.rows; ++r) mean += f.at(r, c);
    mean /= static_cast<double>(f.rows);
    for (std::size_t r = 0; r < f.rows; ++r) sq += (f.at(r, c) - mean) * (f.at(r, c) - mean);
    CHECK(std::abs(mean) < 1e-9);
    const double var = sq / static_cast<double>(f.rows);
    CHECK((std::abs(var - 1.0) < 1e-9 || var == 0.0));
  }
}

TEST_CASE("role features match a per-node aggregation oracle") {
  const auto g = oracle::random_graph(30, 0.2, 8);
  const auto stats = compute_all(g).nodes;
  const auto f = extract_role_features(g, stats);
  const NodeId n = g.num_nodes();

  std::vector<std::vector<double>> raw(n, std::vector<double>(18, 0.0));
  for (NodeId v = 0; v < n; ++v) {
    double sum = 0, mx = 0;
    for (NodeId u : g.neighbors(v)) {
      sum += g.degree(u);
      mx = std::max<double>(mx, g.degree(u));
    }
    raw[v][0] = g.degree(v);
    raw[v][1] = static_cast<double>(oracle::triangles(g).per_node[v]);
    raw[v][2] = oracle::local_clustering(g, v);
    raw[v][3] = oracle::core_numbers(g)[v];
    raw[v][4] = g.degree(v) ? sum / g.degree(v) : 0;
    raw[v][5] = mx;
  }
  for (NodeId v = 0; v < n; ++v) {
    for (int b = 0; b < 6; ++b) {
      double s = 0;
      for (NodeId u : g.neighbors(v)) s += raw[u][b];
      raw[v][6 + b] = g.degree(v) ? s / g.degree(v) : 0;
      raw[v][12 + b] = s;
    }
  }
  for (int c = 0; c < 18; ++c) {
    double mean = 0;
    for (NodeId v = 0; v < n; ++v) mean += raw[v][c];
    mean /= n;
    double var = 0;
    for (NodeId v = 0; v < n; ++v) var += (raw[v][c] - mean) * (raw[v][c] - mean);
    const double sd = std::sqrt(var / n);
    for (NodeId v = 0; v < n; ++v) {
      const double expected = sd > 1e-12 ? (raw[v][c] - mean) / sd : 0.0;
      CHECK(f.at(v, c) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("role features respect symmetry") {
  const auto s = oracle::star(6);
  const auto f = extract_role_features(s, compute_all(s).nodes);
  bool center_differs = false;
  for (std::size_t c = 0; c < f.cols(); ++c) {
    center_differs |= f.at(0, c) != f.at(1, c);
    for (NodeId leaf = 2; leaf <= 6; ++leaf) CHECK(f.at(leaf, c) == f.at(1, c));
  }
  CHECK(center_differs);
  const auto k4 = oracle::clique(4);
  const auto fk = extract_role_features(k4, compute_all(k4).nodes);
  CHECK(std::all_of(fk.data.begin(), fk.data.end(), [](double x) { return x == 0.0; }));
}

TEST_CASE("star center gets a singleton role") {
  const auto s = oracle::star(9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto l = roles_of(s, 2, seed);
    CHECK(l.k == 2);
    for (NodeId leaf = 1; leaf <= 9; ++leaf) {
      CHECK(l.labels[leaf] != l.labels[0]);
      CHECK(l.labels[leaf] == l.labels[1]);
    }
    CHECK(l.labels[0] == 1);  // higher degree sorts last
  }
  const auto autok = roles_of(s, std::nullopt);
  CHECK(autok.k == 2);
}

TEST_CASE("identical feature rows always share a role") {
  std::vector<Edge> edges;
  for (NodeId base : {0u, 4u, 8u}) {
    for (NodeId a = 0; a < 4; ++a) {
      for (NodeId b = a + 1; b < 4; ++b) edges.emplace_back(base + a, base + b);
    }
  }
  const auto g = Graph::from_edges(12, edges);
  const auto one = roles_of(g, 1);
  CHECK(one.k == 1);
  for (std::uint32_t k = 1; k <= 5; ++k) {
    const auto l = roles_of(g, k);
    CHECK(std::all_of(l.labels.begin(), l.labels.end(), [&](auto x) { return x == l.labels[0]; }));
  }
  CHECK_THROWS_AS(roles_of(oracle::clique(3), 4), std::invalid_argument);
}

TEST_CASE("auto roles on Chung-Lu are few and ordered by degree") {
  std::vector<double> w(400);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 2.0 + 40.0 / (1.0 + static_cast<double>(i) / 8.0);
  const auto g = gen_chung_lu(w, 21).graph;
  const auto l = roles_of(g, std::nullopt, 5);
  CHECK(l.k >= 2);
  CHECK(l.k <= 8);
  check_dense(l);
  std::vector<double> sum(l.k, 0), count(l.k, 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    sum[l.labels[v]] += g.degree(v);
    count[l.labels[v]] += 1;
  }
  for (std::uint32_t r = 1; r < l.k; ++r) CHECK(sum[r] / count[r] > sum[r - 1] / count[r - 1]);
  CHECK(*l.quality >= 0.0);
  CHECK(*l.quality <= 1.0);
}

TEST_CASE("kmeans is deterministic per seed") {
  const auto g = oracle::random_graph(60, 0.1, 2);
  const auto f = extract_role_features(g, compute_all(g).nodes);
  const auto a = kmeans(f, 4, 3);
  const auto b = kmeans(f, 4, 3);
  CHECK(a.labels == b.labels);
  CHECK(a.within_ss == b.within_ss);
  CHECK_THROWS_AS(kmeans(f, 0, 1), std::invalid_argument);
}
