#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netrepo/graph.hpp"
#include "netrepo/parallel.hpp"

namespace netrepo {

struct NodeStatsTable {
  std::vector<std::uint32_t> degree;
  std::vector<std::uint64_t> triangles;
  std::vector<double> local_clustering;
  std::vector<std::uint32_t> kcore;
  std::vector<std::uint64_t> wedges;

  std::size_t size() const { return degree.size(); }

  static const std::vector<std::string>& column_names();
  static bool has_column(std::string_view name);
  // Value of `column` at node v as a double. Throws std::invalid_argument for
  // an unknown column.
  double value(std::string_view column, NodeId v) const;

  friend bool operator==(const NodeStatsTable&, const NodeStatsTable&) = default;
};

// Aggregates whose value is undefined for the input (density with n < 2,
// assortativity with zero endpoint-degree variance) are nullopt.
struct GraphStats {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::optional<double> density;
  std::uint32_t max_degree = 0;
  double avg_degree = 0;
  std::uint64_t total_triangles = 0;
  std::uint64_t total_wedges = 0;
  double avg_clustering = 0;
  double global_clustering = 0;
  std::uint32_t max_kcore = 0;
  std::optional<double> assortativity;
  std::uint32_t max_clique_lb = 0;
  std::string max_clique_method = "greedy_max_core";
  std::uint32_t components = 0;

  static const std::vector<std::string>& field_names();
  static bool has_field(std::string_view name);
  // Numeric value of a field; nullopt when the field is undefined.
  std::optional<double> value(std::string_view field) const;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

struct TriangleCounts {
  std::vector<std::uint64_t> per_node;
  std::uint64_t total = 0;
};

TriangleCounts count_triangles(const Graph& g, unsigned workers = default_workers());

struct CoreDecomposition {
  std::vector<std::uint32_t> core;
  std::uint32_t max_core = 0;
};

CoreDecomposition kcore_decomposition(const Graph& g);

struct Clustering {
  std::vector<double> local;
  std::vector<std::uint64_t> wedges;
  double average = 0;
  double global = 0;
  std::uint64_t total_wedges = 0;
};

Clustering clustering_coefficients(const Graph& g, const std::vector<std::uint64_t>& triangles);

std::optional<double> assortativity(const Graph& g);

std::uint32_t max_clique_lower_bound(const Graph& g, const CoreDecomposition& cores);
std::uint32_t max_clique_lower_bound(const Graph& g);

struct StatsResult {
  GraphStats graph;
  NodeStatsTable nodes;
};

StatsResult compute_all(const Graph& g, unsigned workers = default_workers());

struct Distribution {
  std::string statistic;
  bool binned = false;
  std::vector<double> values;
  std::vector<double> pdf;
  std::vector<double> cdf;
  std::vector<double> ccdf;
};

inline constexpr int kClusteringBins = 50;

// Integer columns keep their exact value support; local_clustering is
// grouped into kClusteringBins equal-width bins over [0, 1], each reported
// by its lower edge.
Distribution distribution(const NodeStatsTable& stats, std::string_view column);

}  // namespace netrepo
