#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netrepo/graph.hpp"
#include "netrepo/stats.hpp"

namespace netrepo {

enum class LabelingKind { community, role };

struct NodeLabeling {
  LabelingKind kind = LabelingKind::community;
  std::vector<std::uint32_t> labels;  // dense in [0, k)
  std::uint32_t k = 0;
  // Modularity for communities (null when m = 0); WSS/TSS for roles.
  std::optional<double> quality;
};

inline constexpr int kMaxLabelSweeps = 100;
inline constexpr int kLabelRestarts = 4;

// Asynchronous label propagation: every sweep visits nodes in a fresh seeded
// shuffle and each node takes the most frequent neighbor label (smallest label
// on ties). Stops at a fixpoint or after kMaxLabelSweeps sweeps. Smallest-label
// ties can flood one label across a sparse cut in the first sweep, so
// kLabelRestarts runs are made from derived seeds and the one with the highest
// modularity is kept (earliest on ties). Final labels are renumbered densely
// in order of first appearance by node id.
NodeLabeling detect_communities(const Graph& g, std::uint64_t seed);

std::optional<double> modularity(const Graph& g, const std::vector<std::uint32_t>& labels);

struct FeatureMatrix {
  std::size_t rows = 0;
  std::vector<std::string> names;
  std::vector<double> data;  // row-major, rows x names.size()

  std::size_t cols() const { return names.size(); }
  double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }
  double& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
};

// Six base features (degree, triangles, local_clustering, kcore, mean and max
// neighbor degree) plus their neighbor means and neighbor sums: 18 columns.
// Columns are standardized to zero mean and unit variance; constant columns
// become all zeros.
FeatureMatrix extract_role_features(const Graph& g, const NodeStatsTable& stats);

inline constexpr std::uint32_t kMinAutoRoles = 2;
inline constexpr std::uint32_t kMaxAutoRoles = 8;

// k-means over feature rows with seeded k-means++ initialization. Roles are
// numbered by ascending mean of feature column 0 (standardized degree).
// With k unset, k is picked in [2, 8] as the largest relative drop in the
// within-cluster sum of squares: argmax_k (W(k-1) - W(k)) / W(k-1).
NodeLabeling discover_roles(const FeatureMatrix& features, std::optional<std::uint32_t> k,
                            std::uint64_t seed);

struct KMeansResult {
  std::vector<std::uint32_t> labels;
  std::uint32_t k = 0;  // non-empty clusters
  double within_ss = 0;
};

KMeansResult kmeans(const FeatureMatrix& features, std::uint32_t k, std::uint64_t seed);

}  // namespace netrepo
