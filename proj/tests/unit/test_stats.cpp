#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "netrepo/generators.hpp"
#include "netrepo/stats.hpp"
#include "oracles.hpp"

using namespace netrepo;

TEST_CASE("triangle counts on small closed forms") {
  const auto k3 = count_triangles(oracle::clique(3), 2);
  CHECK(k3.total == 1);
  CHECK(k3.per_node == std::vector<std::uint64_t>{1, 1, 1});
  const auto s5 = count_triangles(oracle::star(5), 2);
  CHECK(s5.total == 0);
  CHECK(std::all_of(s5.per_node.begin(), s5.per_node.end(), [](auto t) { return t == 0; }));
  CHECK(count_triangles(oracle::clique(6)).total == 20);
  CHECK(count_triangles(Graph()).total == 0);
}

TEST_CASE("triangle counts match triple enumeration") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(48, 0.2, seed);
    const auto fast = count_triangles(g, 3);
    const auto slow = oracle::triangles(g);
    CHECK(fast.total == slow.total);
    CHECK(fast.per_node == slow.per_node);
  }
}

TEST_CASE("core numbers") {
  const auto k5 = kcore_decomposition(oracle::clique(5));
  CHECK(k5.max_core == 4);
  CHECK(std::all_of(k5.core.begin(), k5.core.end(), [](auto c) { return c == 4; }));
  const auto p4 = kcore_decomposition(oracle::path(4));
  CHECK(p4.max_core == 1);
  CHECK(p4.core == std::vector<std::uint32_t>{1, 1, 1, 1});
  const auto iso = kcore_decomposition(oracle::make_graph(3, {{0, 1}}));
  CHECK(iso.core == std::vector<std::uint32_t>{1, 1, 0});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(40, 0.15, seed);
    CHECK(kcore_decomposition(g).core == oracle::core_numbers(g));
  }
}

TEST_CASE("clustering coefficients") {
  const auto k4 = oracle::clique(4);
  auto c = clustering_coefficients(k4, count_triangles(k4).per_node);
  CHECK(c.average == 1.0);
  CHECK(c.global == 1.0);
  CHECK(std::all_of(c.local.begin(), c.local.end(), [](double x) { return x == 1.0; }));

  const auto s5 = oracle::star(5);
  c = clustering_coefficients(s5, count_triangles(s5).per_node);
  CHECK(c.average == 0.0);
  CHECK(c.global == 0.0);
  CHECK(c.total_wedges == 10);

  // Triangle 0-1-2 with pendant 3 on node 0.
  const auto tp = oracle::make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
  c = clustering_coefficients(tp, count_triangles(tp).per_node);
  CHECK(c.local[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c.local[1] == 1.0);
  CHECK(c.local[3] == 0.0);
  CHECK(c.wedges == std::vector<std::uint64_t>{3, 1, 1, 0});
  CHECK(c.global == doctest::Approx(3.0 / 5.0).epsilon(1e-15));
  CHECK(c.global == doctest::Approx(oracle::global_clustering(tp)).epsilon(1e-15));
}

TEST_CASE("clustering matches wedge enumeration") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(35, 0.25, seed + 100);
    const auto c = clustering_coefficients(g, count_triangles(g).per_node);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      CHECK(c.wedges[v] == oracle::wedges(g, v));
      CHECK(c.local[v] == doctest::Approx(oracle::local_clustering(g, v)).epsilon(1e-14));
    }
    CHECK(c.global == doctest::Approx(oracle::global_clustering(g)).epsilon(1e-14));
  }
}

TEST_CASE("assortativity") {
  CHECK(*assortativity(oracle::star(5)) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_FALSE(assortativity(oracle::clique(4)).has_value());
  CHECK_FALSE(assortativity(oracle::cycle(7)).has_value());
  CHECK_FALSE(assortativity(Graph()).has_value());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(60, 0.1, seed);
    const auto fast = assortativity(g);
    const auto slow = oracle::assortativity(g);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) CHECK(*fast == doctest::Approx(*slow).epsilon(1e-12));
  }
}

TEST_CASE("max clique lower bound") {
  CHECK(max_clique_lower_bound(oracle::clique(6)) == 6);
  const auto k33 =
      oracle::make_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  CHECK(max_clique_lower_bound(k33) == 2);
  CHECK(max_clique_lower_bound(oracle::make_graph(3, {})) == 1);
  CHECK(max_clique_lower_bound(Graph()) == 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(30, 0.4, seed);
    const auto lb = max_clique_lower_bound(g);
    const auto cores = kcore_decomposition(g);
    CHECK(lb <= oracle::max_clique(g));
    CHECK(lb <= cores.max_core + 1);
    CHECK(lb >= 2);
  }
}

TEST_CASE("compute_all closed forms") {
  const auto empty = compute_all(Graph());
  CHECK(empty.graph.n == 0);
  CHECK(empty.graph.m == 0);
  CHECK_FALSE(empty.graph.density.has_value());
  CHECK_FALSE(empty.graph.assortativity.has_value());
  CHECK(empty.graph.components == 0);

  const auto k4 = compute_all(oracle::clique(4)).graph;
  CHECK(k4.n == 4);
  CHECK(k4.m == 6);
  CHECK(k4.total_triangles == 4);
  CHECK(k4.max_kcore == 3);
  CHECK(k4.global_clustering == 1.0);
  CHECK(*k4.density == 1.0);
  CHECK(k4.avg_degree == 3.0);
  CHECK(k4.max_clique_lb == 4);
  CHECK(k4.components == 1);
}

TEST_CASE("stats are independent of the worker count") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = gen_chung_lu(std::vector<double>(500, 8.0), seed).graph;
    const auto ref = compute_all(g, 1);
    for (unsigned w : {2u, 4u, 8u}) {
      const auto other = compute_all(g, w);
      CHECK(other.graph == ref.graph);
      CHECK(other.nodes == ref.nodes);
    }
  }
}

TEST_CASE("node table invariants") {
  const auto g = oracle::random_graph(64, 0.2, 9);
  const auto s = compute_all(g).nodes;
  std::uint64_t tri = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    CHECK(s.triangles[v] <= s.wedges[v]);
    CHECK(s.kcore[v] <= s.degree[v]);
    tri += s.triangles[v];
  }
  CHECK(tri == 3 * compute_all(g).graph.total_triangles);
  CHECK(s.value("degree", 3) == s.degree[3]);
  CHECK_THROWS_AS(s.value("pagerank", 0), std::invalid_argument);
}

TEST_CASE("distribution of an integer column") {
  NodeStatsTable t;
  t.degree = {1, 1, 2};
  t.triangles = {0, 0, 0};
  t.local_clustering = {0, 0, 0};
  t.kcore = {1, 1, 1};
  t.wedges = {0, 0, 1};
  const auto d = distribution(t, "degree");
  CHECK_FALSE(d.binned);
  CHECK(d.values == std::vector<double>{1, 2});
  CHECK(d.pdf[0] == doctest::Approx(2.0 / 3.0));
  CHECK(d.pdf[1] == doctest::Approx(1.0 / 3.0));
  CHECK(d.ccdf[0] == 1.0);
  CHECK(d.ccdf[1] == doctest::Approx(1.0 / 3.0));
  CHECK(d.cdf.back() == 1.0);

  const auto k = distribution(t, "kcore");
  CHECK(k.values.size() == 1);
  CHECK(k.cdf[0] == 1.0);
  CHECK(k.ccdf[0] == 1.0);

  CHECK_THROWS_AS(distribution(t, "betweenness"), std::invalid_argument);
  CHECK_THROWS_AS(distribution(NodeStatsTable{}, "degree"), std::invalid_argument);
}

TEST_CASE("distribution of local clustering is binned") {
  const auto g = oracle::random_graph(64, 0.3, 4);
  const auto d = distribution(compute_all(g).nodes, "local_clustering");
  CHECK(d.binned);
  CHECK(d.values.size() <= static_cast<std::size_t>(kClusteringBins));
  for (double v : d.values) {
    const double scaled = v * kClusteringBins;
    CHECK(scaled == doctest::Approx(std::round(scaled)));
  }
}

TEST_CASE("degree CCDF matches a sort-and-count tail") {
  const auto g = gen_preferential_attachment(200, 3, 5);
  const auto s = compute_all(g).nodes;
  const auto d = distribution(s, "degree");
  double pdf_sum = 0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    const auto at_least = std::count_if(s.degree.begin(), s.degree.end(), [&](auto x) { return x >= d.values[i]; });
    CHECK(d.ccdf[i] == doctest::Approx(static_cast<double>(at_least) / 200.0).epsilon(1e-12));
    pdf_sum += d.pdf[i];
    if (i > 0) {
      CHECK(d.cdf[i] >= d.cdf[i - 1]);
      CHECK(d.ccdf[i] <= d.ccdf[i - 1]);
    }
  }
  CHECK(std::abs(pdf_sum - 1.0) <= 1e-12);
  CHECK(std::abs(d.cdf.back() - 1.0) <= 1e-12);
  CHECK(d.ccdf.front() == 1.0);
}
