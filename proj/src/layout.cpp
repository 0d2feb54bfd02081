#include "netrepo/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "netrepo/rng.hpp"

namespace netrepo {

namespace {

constexpr double kIdeal = 1.0;  // ideal edge length
constexpr double kMinDistance = 1e-9;

void repel(const Point& a, const Point& b, Point& disp) {
  double dx = a.x - b.x, dy = a.y - b.y;
  double d2 = dx * dx + dy * dy;
  if (d2 < kMinDistance) {
    dx = kMinDistance;
    dy = 0;
    d2 = kMinDistance * kMinDistance;
  }
  // k^2 / d along the unit vector
  const double f = kIdeal * kIdeal / d2;
  disp.x += dx * f;
  disp.y += dy * f;
}

// Layout of one component given as a list of member ids; positions are
// written into `pos` at those ids.
void layout_component(const Graph& g, const std::vector<NodeId>& members, const std::vector<NodeId>& local,
                      Rng& rng, int iterations, std::vector<Point>& pos) {
  const std::size_t s = members.size();
  if (s == 1) {
    pos[members[0]] = {0, 0};
    return;
  }
  const double side = std::sqrt(static_cast<double>(s)) * kIdeal;
  std::vector<Point> p(s), disp(s);
  for (auto& pt : p) {
    pt.x = rng.uniform() * side;
    pt.y = rng.uniform() * side;
  }
  const double t0 = side / 10.0 + kIdeal;
  const bool exact = s <= kExactRepulsionLimit;
  const double cell = 2 * kIdeal;

  for (int it = 0; it < iterations; ++it) {
    std::fill(disp.begin(), disp.end(), Point{});
    if (exact) {
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
          if (i != j) repel(p[i], p[j], disp[i]);
        }
      }
    } else {
      std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid;
      auto key = [](std::int64_t cx, std::int64_t cy) { return (cx << 32) ^ (cy & 0xffffffff); };
      for (std::uint32_t i = 0; i < s; ++i) {
        grid[key(static_cast<std::int64_t>(std::floor(p[i].x / cell)),
                 static_cast<std::int64_t>(std::floor(p[i].y / cell)))]
            .push_back(i);
      }
      for (std::uint32_t i = 0; i < s; ++i) {
        const auto cx = static_cast<std::int64_t>(std::floor(p[i].x / cell));
        const auto cy = static_cast<std::int64_t>(std::floor(p[i].y / cell));
        for (std::int64_t ox = -1; ox <= 1; ++ox) {
          for (std::int64_t oy = -1; oy <= 1; ++oy) {
            auto found = grid.find(key(cx + ox, cy + oy));
            if (found == grid.end()) continue;
            for (auto j : found->second) {
              if (j == i) continue;
              const double dx = p[i].x - p[j].x, dy = p[i].y - p[j].y;
              if (dx * dx + dy * dy < cell * cell) repel(p[i], p[j], disp[i]);
            }
          }
        }
      }
    }
    for (std::size_t i = 0; i < s; ++i) {
      for (NodeId w : g.neighbors(members[i])) {
        const std::size_t j = local[w];
        const double dx = p[i].x - p[j].x, dy = p[i].y - p[j].y;
        const double d = std::sqrt(dx * dx + dy * dy);
        // d^2 / k along the unit vector, applied from i's side only
        const double f = d / kIdeal;
        disp[i].x -= dx * f;
        disp[i].y -= dy * f;
      }
    }
    const double temperature = t0 * (1.0 - static_cast<double>(it) / iterations);
    for (std::size_t i = 0; i < s; ++i) {
      const double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
      if (len <= 0) continue;
      const double step = std::min(len, temperature) / len;
      p[i].x += disp[i].x * step;
      p[i].y += disp[i].y * step;
    }
  }
  for (std::size_t i = 0; i < s; ++i) pos[members[i]] = p[i];
}

}  // namespace

std::vector<Point> compute_layout(const Graph& g, std::uint64_t seed, int iterations) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  const NodeId n = g.num_nodes();
  std::vector<Point> pos(n);
  if (n == 0) return pos;

  const auto comps = connected_components(g);
  std::vector<std::vector<NodeId>> members(comps.count);
  std::vector<NodeId> local(n);
  for (NodeId v = 0; v < n; ++v) {
    local[v] = static_cast<NodeId>(members[comps.id[v]].size());
    members[comps.id[v]].push_back(v);
  }

  Rng rng(seed);
  struct Box {
    double min_x, min_y, max_x, max_y;
  };
  std::vector<Box> boxes(comps.count);
  double extent = 0;
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    layout_component(g, members[c], local, rng, iterations, pos);
    Box b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (NodeId v : members[c]) {
      b.min_x = std::min(b.min_x, pos[v].x);
      b.min_y = std::min(b.min_y, pos[v].y);
      b.max_x = std::max(b.max_x, pos[v].x);
      b.max_y = std::max(b.max_y, pos[v].y);
    }
    boxes[c] = b;
    extent = std::max({extent, b.max_x - b.min_x, b.max_y - b.min_y});
  }

  const auto columns = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(comps.count))));
  const double cell = extent + kIdeal;
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    const double ox = (c % columns) * cell - boxes[c].min_x;
    const double oy = (c / columns) * cell - boxes[c].min_y;
    for (NodeId v : members[c]) {
      pos[v].x += ox;
      pos[v].y += oy;
    }
  }
  return pos;
}

}  // namespace netrepo
