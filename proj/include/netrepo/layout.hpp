#pragma once

#include <cstdint>
#include <vector>

#include "netrepo/graph.hpp"

namespace netrepo {

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr int kDefaultLayoutIterations = 200;
// Components above this size use grid-bucketed repulsion with a 2k cutoff
// instead of all pairs.
inline constexpr NodeId kExactRepulsionLimit = 1500;

// Fruchterman-Reingold spring-electrical layout, run per connected component
// with seeded initial positions and linear cooling. Components are then
// translated into the cells of a square grid (largest cell extent plus a unit
// margin), so their bounding boxes never overlap. A single node sits at (0, 0).
std::vector<Point> compute_layout(const Graph& g, std::uint64_t seed,
                                  int iterations = kDefaultLayoutIterations);

}  // namespace netrepo
