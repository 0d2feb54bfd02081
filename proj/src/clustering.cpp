#include "netrepo/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "netrepo/rng.hpp"

namespace netrepo {

namespace {

std::vector<std::uint32_t> renumber_by_first_seen(const std::vector<std::uint32_t>& labels,
                                                  std::uint32_t& k) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> remap(labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1,
                                   kUnset);
  std::vector<std::uint32_t> out(labels.size());
  k = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto& slot = remap[labels[v]];
    if (slot == kUnset) slot = k++;
    out[v] = slot;
  }
  return out;
}

double squared_distance(const FeatureMatrix& f, std::size_t row, const std::vector<double>& center) {
  double d = 0;
  for (std::size_t c = 0; c < f.cols(); ++c) {
    const double diff = f.at(row, c) - center[c];
    d += diff * diff;
  }
  return d;
}

std::vector<double> row_vector(const FeatureMatrix& f, std::size_t row) {
  return {f.data.begin() + static_cast<std::ptrdiff_t>(row * f.cols()),
          f.data.begin() + static_cast<std::ptrdiff_t>((row + 1) * f.cols())};
}

std::size_t count_distinct_rows(const FeatureMatrix& f) {
  std::vector<std::size_t> idx(f.rows);
  std::iota(idx.begin(), idx.end(), 0);
  auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(f.data.begin() + a * f.cols(), f.data.begin() + (a + 1) * f.cols(),
                                        f.data.begin() + b * f.cols(), f.data.begin() + (b + 1) * f.cols());
  };
  std::sort(idx.begin(), idx.end(), row_less);
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || row_less(idx[i - 1], idx[i])) ++distinct;
  }
  return distinct;
}

double total_ss(const FeatureMatrix& f) {
  if (f.rows == 0) return 0;
  double ss = 0;
  for (std::size_t c = 0; c < f.cols(); ++c) {
    double mean = 0;
    for (std::size_t r = 0; r < f.rows; ++r) mean += f.at(r, c);
    mean /= static_cast<double>(f.rows);
    for (std::size_t r = 0; r < f.rows; ++r) ss += (f.at(r, c) - mean) * (f.at(r, c) - mean);
  }
  return ss;
}

// Renumbers clusters by ascending mean of column 0, ties by smallest member.
void order_by_first_feature(const FeatureMatrix& f, KMeansResult& r) {
  std::vector<double> sum(r.k, 0.0);
  std::vector<std::size_t> size(r.k, 0), first(r.k, f.rows);
  for (std::size_t v = 0; v < f.rows; ++v) {
    sum[r.labels[v]] += f.at(v, 0);
    ++size[r.labels[v]];
    first[r.labels[v]] = std::min(first[r.labels[v]], v);
  }
  std::vector<std::uint32_t> order(r.k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    double ma = sum[a] / static_cast<double>(size[a]);
    double mb = sum[b] / static_cast<double>(size[b]);
    if (ma != mb) return ma < mb;
    return first[a] < first[b];
  });
  std::vector<std::uint32_t> rank(r.k);
  for (std::uint32_t i = 0; i < r.k; ++i) rank[order[i]] = i;
  for (auto& l : r.labels) l = rank[l];
}

std::vector<std::uint32_t> propagate_labels(const Graph& g, std::uint64_t seed) {
  const NodeId n = g.num_nodes();
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint32_t> tally(n, 0);
  std::vector<std::uint32_t> touched;
  Rng rng(seed);

  for (int sweep = 0; sweep < kMaxLabelSweeps; ++sweep) {
    for (NodeId i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    bool changed = false;
    for (NodeId v : order) {
      auto nb = g.neighbors(v);
      if (nb.empty()) continue;
      touched.clear();
      for (NodeId u : nb) {
        if (tally[label[u]]++ == 0) touched.push_back(label[u]);
      }
      std::uint32_t best = label[v];
      std::uint32_t best_count = 0;
      for (auto l : touched) {
        if (tally[l] > best_count || (tally[l] == best_count && l < best)) {
          best = l;
          best_count = tally[l];
        }
        tally[l] = 0;
      }
      if (best != label[v]) {
        label[v] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  return label;
}

}  // namespace

NodeLabeling detect_communities(const Graph& g, std::uint64_t seed) {
  if (g.num_nodes() == 0) throw std::invalid_argument("community detection needs at least one node");
  const int runs = g.num_edges() == 0 ? 1 : kLabelRestarts;
  NodeLabeling best;
  best.kind = LabelingKind::community;
  for (int r = 0; r < runs; ++r) {
    NodeLabeling cand;
    cand.kind = LabelingKind::community;
    cand.labels = renumber_by_first_seen(propagate_labels(g, mix_seed(seed, static_cast<std::uint64_t>(r))), cand.k);
    cand.quality = modularity(g, cand.labels);
    if (r == 0 || *cand.quality > *best.quality) best = std::move(cand);
  }
  return best;
}

std::optional<double> modularity(const Graph& g, const std::vector<std::uint32_t>& labels) {
  if (labels.size() != g.num_nodes()) throw std::invalid_argument("label vector size mismatch");
  if (g.num_edges() == 0) return std::nullopt;
  const std::uint32_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::uint64_t> intra(k, 0), degree_sum(k, 0);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    degree_sum[labels[u]] += g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      if (u < v && labels[u] == labels[v]) ++intra[labels[u]];
    }
  }
  const double m = static_cast<double>(g.num_edges());
  double q = 0;
  for (std::uint32_t c = 0; c < k; ++c) {
    const double share = static_cast<double>(degree_sum[c]) / (2 * m);
    q += static_cast<double>(intra[c]) / m - share * share;
  }
  return q;
}

FeatureMatrix extract_role_features(const Graph& g, const NodeStatsTable& stats) {
  const NodeId n = g.num_nodes();
  if (stats.size() != n) throw std::invalid_argument("node stats do not match graph");
  static const std::vector<std::string> base_names{"degree",           "triangles",       "local_clustering",
                                                   "kcore",            "mean_nbr_degree", "max_nbr_degree"};
  constexpr std::size_t kBase = 6;
  FeatureMatrix f;
  f.rows = n;
  f.names = base_names;
  for (const auto& b : base_names) f.names.push_back("nbr_mean_" + b);
  for (const auto& b : base_names) f.names.push_back("nbr_sum_" + b);
  const std::size_t cols = f.cols();
  f.data.assign(static_cast<std::size_t>(n) * cols, 0.0);

  for (NodeId v = 0; v < n; ++v) {
    double nbr_sum = 0, nbr_max = 0;
    for (NodeId u : g.neighbors(v)) {
      nbr_sum += g.degree(u);
      nbr_max = std::max(nbr_max, static_cast<double>(g.degree(u)));
    }
    const double d = g.degree(v);
    f.at(v, 0) = d;
    f.at(v, 1) = static_cast<double>(stats.triangles[v]);
    f.at(v, 2) = stats.local_clustering[v];
    f.at(v, 3) = stats.kcore[v];
    f.at(v, 4) = d > 0 ? nbr_sum / d : 0.0;
    f.at(v, 5) = nbr_max;
  }
  for (NodeId v = 0; v < n; ++v) {
    const double d = g.degree(v);
    for (std::size_t b = 0; b < kBase; ++b) {
      double s = 0;
      for (NodeId u : g.neighbors(v)) s += f.at(u, b);
      f.at(v, kBase + b) = d > 0 ? s / d : 0.0;
      f.at(v, 2 * kBase + b) = s;
    }
  }

  for (std::size_t c = 0; c < cols; ++c) {
    bool constant = true;
    for (NodeId v = 1; v < n && constant; ++v) constant = f.at(v, c) == f.at(0, c);
    if (constant) {
      for (NodeId v = 0; v < n; ++v) f.at(v, c) = 0.0;
      continue;
    }
    double mean = 0;
    for (NodeId v = 0; v < n; ++v) mean += f.at(v, c);
    mean /= n;
    double var = 0;
    for (NodeId v = 0; v < n; ++v) var += (f.at(v, c) - mean) * (f.at(v, c) - mean);
    const double sd = std::sqrt(var / n);
    for (NodeId v = 0; v < n; ++v) f.at(v, c) = sd > 0 ? (f.at(v, c) - mean) / sd : 0.0;
  }
  return f;
}

KMeansResult kmeans(const FeatureMatrix& f, std::uint32_t k, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  if (f.rows < k) {
    throw std::invalid_argument("cannot form " + std::to_string(k) + " roles from " + std::to_string(f.rows) +
                                " nodes");
  }
  const std::size_t n = f.rows;
  Rng rng(seed);

  // k-means++ seeding; stops early when every row coincides with a center
  std::vector<std::vector<double>> centers;
  centers.push_back(row_vector(f, rng.below(n)));
  std::vector<double> nearest(n);
  for (std::size_t r = 0; r < n; ++r) nearest[r] = squared_distance(f, r, centers[0]);
  while (centers.size() < k) {
    double total = 0;
    for (double d : nearest) total += d;
    if (total <= 0) break;
    const double target = rng.uniform() * total;
    double acc = 0;
    std::size_t pick = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (nearest[r] <= 0) continue;
      acc += nearest[r];
      pick = r;
      if (acc > target) break;
    }
    centers.push_back(row_vector(f, pick));
    for (std::size_t r = 0; r < n; ++r) nearest[r] = std::min(nearest[r], squared_distance(f, r, centers.back()));
  }

  const std::size_t kc = centers.size();
  std::vector<std::uint32_t> assign(n, 0);
  auto assign_all = [&] {
    bool changed = false;
    for (std::size_t r = 0; r < n; ++r) {
      std::uint32_t best = 0;
      double best_d = squared_distance(f, r, centers[0]);
      for (std::uint32_t c = 1; c < kc; ++c) {
        double d = squared_distance(f, r, centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[r] != best) changed = true;
      assign[r] = best;
    }
    return changed;
  };
  assign_all();
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<std::vector<double>> sums(kc, std::vector<double>(f.cols(), 0.0));
    std::vector<std::size_t> sizes(kc, 0);
    for (std::size_t r = 0; r < n; ++r) {
      ++sizes[assign[r]];
      for (std::size_t c = 0; c < f.cols(); ++c) sums[assign[r]][c] += f.at(r, c);
    }
    for (std::size_t c = 0; c < kc; ++c) {
      if (sizes[c] == 0) continue;
      for (auto& x : sums[c]) x /= static_cast<double>(sizes[c]);
      centers[c] = std::move(sums[c]);
    }
    if (!assign_all()) break;
  }

  KMeansResult out;
  out.labels = renumber_by_first_seen(assign, out.k);
  for (std::size_t r = 0; r < n; ++r) out.within_ss += squared_distance(f, r, centers[assign[r]]);
  order_by_first_feature(f, out);
  return out;
}

NodeLabeling discover_roles(const FeatureMatrix& features, std::optional<std::uint32_t> k, std::uint64_t seed) {
  if (features.rows == 0) throw std::invalid_argument("role discovery needs at least one node");
  KMeansResult chosen;
  if (k) {
    chosen = kmeans(features, *k, seed);
  } else {
    const auto distinct = count_distinct_rows(features);
    const auto k_max = static_cast<std::uint32_t>(std::min<std::size_t>(kMaxAutoRoles, distinct));
    if (k_max < kMinAutoRoles) {
      chosen = kmeans(features, 1, seed);
    } else {
      double prev = kmeans(features, 1, seed).within_ss;
      double best_drop = -1;
      for (std::uint32_t kk = kMinAutoRoles; kk <= k_max; ++kk) {
        auto run = kmeans(features, kk, seed);
        const double wss = run.within_ss;
        const double drop = prev > 0 ? (prev - wss) / prev : 0.0;
        if (drop > best_drop) {
          best_drop = drop;
          chosen = std::move(run);
        }
        prev = wss;
      }
    }
  }
  NodeLabeling out;
  out.kind = LabelingKind::role;
  out.k = chosen.k;
  out.labels = std::move(chosen.labels);
  const double tss = total_ss(features);
  out.quality = tss > 0 ? chosen.within_ss / tss : 0.0;
  return out;
}

}  // namespace netrepo
