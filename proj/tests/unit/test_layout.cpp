#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "netrepo/layout.hpp"
#include "netrepo/stats.hpp"
#include "oracles.hpp"

using namespace netrepo;

namespace {

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box bounds(const std::vector<Point>& pos, std::initializer_list<NodeId> nodes) {
  Box b{1e300, 1e300, -1e300, -1e300};
  for (NodeId v : nodes) {
    b.x0 = std::min(b.x0, pos[v].x);
    b.y0 = std::min(b.y0, pos[v].y);
    b.x1 = std::max(b.x1, pos[v].x);
    b.y1 = std::max(b.y1, pos[v].y);
  }
  return b;
}

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

TEST_CASE("single node sits at the origin") {
  const auto pos = compute_layout(oracle::make_graph(1, {}), 3);
  REQUIRE(pos.size() == 1);
  CHECK(pos[0] == Point{0, 0});
  CHECK(compute_layout(Graph(), 1).empty());
}

TEST_CASE("components get disjoint bounding boxes") {
  const auto g = oracle::make_graph(9, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 6}, {6, 3}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pos = compute_layout(g, seed);
    const Box a = bounds(pos, {0, 1, 2}), b = bounds(pos, {3, 4, 5, 6}), c = bounds(pos, {7}), d = bounds(pos, {8});
    CHECK_FALSE(a.overlaps(b));
    CHECK_FALSE(a.overlaps(c));
    CHECK_FALSE(b.overlaps(c));
    CHECK_FALSE(c.overlaps(d));
    CHECK_FALSE(a.overlaps(d));
  }
}

TEST_CASE("layout is deterministic and finite") {
  const auto g = oracle::random_graph(80, 0.05, 4);
  const auto a = compute_layout(g, 11);
  CHECK(a == compute_layout(g, 11));
  CHECK(a != compute_layout(g, 12));
  for (const auto& p : a) CHECK((std::isfinite(p.x) && std::isfinite(p.y)));
}

TEST_CASE("path endpoints end up farthest apart") {
  const auto p10 = oracle::path(10);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pos = compute_layout(p10, seed);
    const double ends = dist(pos[0], pos[9]);
    bool farthest = true;
    for (NodeId a = 0; a < 10 && farthest; ++a) {
      for (NodeId b = a + 1; b < 10; ++b) {
        if ((a != 0 || b != 9) && dist(pos[a], pos[b]) > ends) {
          farthest = false;
          break;
        }
      }
    }
    hits += farthest;
  }
  CHECK(hits >= 90);
}

TEST_CASE("edges are shorter than non-edges on average") {
  const auto g = oracle::two_k5_bridge();
  const auto pos = compute_layout(g, 2);
  double in = 0, out = 0;
  int ni = 0, no = 0;
  for (NodeId a = 0; a < 10; ++a) {
    for (NodeId b = a + 1; b < 10; ++b) {
      (g.has_edge(a, b) ? in : out) += dist(pos[a], pos[b]);
      ++(g.has_edge(a, b) ? ni : no);
    }
  }
  CHECK(in / ni < out / no);
}

TEST_CASE("large components use the bucketed repulsion path") {
  const auto g = oracle::random_graph(kExactRepulsionLimit + 200, 3.0 / kExactRepulsionLimit, 6);
  const auto pos = compute_layout(g, 1, 20);
  REQUIRE(pos.size() == g.num_nodes());
  for (const auto& p : pos) CHECK((std::isfinite(p.x) && std::isfinite(p.y)));
  CHECK(pos == compute_layout(g, 1, 20));
}
