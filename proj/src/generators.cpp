#include "netrepo/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace netrepo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr NodeId kMaxGeneratedNodes = 50'000'000;

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "invalid generator config";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i == 0 ? ": " : "; ") + v[i];
  return out;
}

// Chung-Lu skipping over `nodes` (already sorted by descending weight): pair
// (i, j) is an edge with probability min(1, scale * w_i * w_j). Runs in
// expected O(|nodes| + edges).
template <typename Sink>
void chung_lu_sorted(std::span<const NodeId> nodes, std::span<const double> weight, double scale,
                     Rng& rng, Sink&& emit) {
  const std::size_t k = nodes.size();
  for (std::size_t u = 0; u + 1 < k; ++u) {
    const double wu = weight[nodes[u]];
    std::size_t v = u + 1;
    double p = std::min(1.0, scale * wu * weight[nodes[v]]);
    while (v < k && p > 0) {
      if (p < 1) {
        double skip = std::floor(std::log(rng.uniform_open_zero()) / std::log1p(-p));
        if (skip >= static_cast<double>(k - v)) break;
        v += static_cast<std::size_t>(skip);
      }
      const double q = std::min(1.0, scale * wu * weight[nodes[v]]);
      if (rng.uniform() < q / p) emit(nodes[u], nodes[v]);
      p = q;
      ++v;
    }
  }
}

std::vector<NodeId> sorted_by_weight(std::vector<NodeId> nodes, std::span<const double> weight) {
  std::stable_sort(nodes.begin(), nodes.end(),
                   [&](NodeId a, NodeId b) { return weight[a] > weight[b]; });
  return nodes;
}

void check_weights(std::span<const double> weights) {
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and >= 0");
  }
}

std::optional<std::string> clamp_warning(std::span<const NodeId> sorted, std::span<const double> weight,
                                         double scale, std::string_view where) {
  if (sorted.size() < 2) return std::nullopt;
  double top = scale * weight[sorted[0]] * weight[sorted[1]];
  if (top <= 1.0) return std::nullopt;
  std::ostringstream msg;
  msg << "Chung-Lu feasibility: " << where << " max pair product w_i*w_j exceeds the weight total"
      << " (largest pair probability " << top << "); probabilities clamped at 1";
  return msg.str();
}

Graph generate_model(const ModelParams& model, std::uint64_t seed, std::vector<std::string>& warnings) {
  return std::visit(
      overloaded{
          [&](const ErdosRenyiParams& p) { return gen_erdos_renyi(p.n, p.p, seed); },
          [&](const PreferentialAttachmentParams& p) {
            return gen_preferential_attachment(p.n, p.m_attach, seed, p.seed_clique_size);
          },
          [&](const ChungLuParams& p) {
            auto r = gen_chung_lu(p.weights, seed);
            warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
            return std::move(r.graph);
          },
          [&](const BlockChungLuParams& p) {
            auto r = gen_block_chung_lu(p.block_sizes, p.weights, p.mu, seed);
            warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
            return std::move(r.graph);
          },
      },
      model);
}

void validate_model(const ModelParams& model, std::vector<std::string>& out) {
  std::visit(
      overloaded{
          [&](const ErdosRenyiParams& p) {
            if (!(p.p >= 0 && p.p <= 1)) out.push_back("p must be in [0, 1]");
            if (p.n > kMaxGeneratedNodes) out.push_back("n exceeds the generator node limit");
          },
          [&](const PreferentialAttachmentParams& p) {
            if (p.m_attach < 1) out.push_back("m_attach must be >= 1");
            std::uint64_t clique = p.seed_clique_size.value_or(p.m_attach + 1);
            if (clique < std::uint64_t{p.m_attach} + 1) {
              out.push_back("seed_clique_size must be >= m_attach + 1");
            }
            if (p.n <= clique) out.push_back("n must exceed the seed clique size (m_attach + 1 by default)");
            if (p.n > kMaxGeneratedNodes) out.push_back("n exceeds the generator node limit");
          },
          [&](const ChungLuParams& p) {
            if (std::any_of(p.weights.begin(), p.weights.end(),
                            [](double w) { return !(w >= 0) || !std::isfinite(w); })) {
              out.push_back("weights must be finite and >= 0");
            }
            if (p.weights.size() > kMaxGeneratedNodes) out.push_back("weights exceed the generator node limit");
          },
          [&](const BlockChungLuParams& p) {
            std::uint64_t total = std::accumulate(p.block_sizes.begin(), p.block_sizes.end(), std::uint64_t{0});
            if (p.block_sizes.empty()) out.push_back("at least one block is required");
            if (total != p.weights.size()) out.push_back("sum of block sizes must equal the number of weights");
            if (!(p.mu >= 0 && p.mu <= 1)) out.push_back("mu must be in [0, 1]");
            if (std::any_of(p.weights.begin(), p.weights.end(),
                            [](double w) { return !(w >= 0) || !std::isfinite(w); })) {
              out.push_back("weights must be finite and >= 0");
            }
            if (p.weights.size() > kMaxGeneratedNodes) out.push_back("weights exceed the generator node limit");
          },
      },
      model);
}

void validate_patterns(std::span<const PatternSpec> patterns, std::vector<std::string>& out) {
  std::uint64_t nodes = 0;
  for (const auto& spec : patterns) {
    auto min_size = pattern_min_size(spec.type);
    if (spec.size < min_size) {
      out.push_back(std::string(pattern_name(spec.type)) + " size must be >= " + std::to_string(min_size));
    }
    if (spec.type == PatternType::edge && spec.size != 2) out.push_back("edge size must be 2");
    nodes += std::uint64_t{spec.size} * spec.count;
  }
  if (nodes > kMaxGeneratedNodes) out.push_back("patterns exceed the generator node limit");
}

}  // namespace

InvalidConfig::InvalidConfig(std::vector<std::string> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

std::string_view kind_name(const GeneratorConfig& config) {
  return std::visit(overloaded{
                        [](const ErdosRenyiParams&) { return std::string_view("erdos_renyi"); },
                        [](const PreferentialAttachmentParams&) {
                          return std::string_view("preferential_attachment");
                        },
                        [](const ChungLuParams&) { return std::string_view("chung_lu"); },
                        [](const BlockChungLuParams&) { return std::string_view("block_chung_lu"); },
                        [](const PatternParams&) { return std::string_view("pattern"); },
                        [](const HybridParams&) { return std::string_view("hybrid"); },
                    },
                    config.params);
}

std::string_view pattern_name(PatternType type) {
  switch (type) {
    case PatternType::node: return "node";
    case PatternType::edge: return "edge";
    case PatternType::clique: return "clique";
    case PatternType::star: return "star";
    case PatternType::cycle: return "cycle";
    case PatternType::chain: return "chain";
  }
  return "unknown";
}

std::optional<PatternType> pattern_from_name(std::string_view name) {
  for (auto t : {PatternType::node, PatternType::edge, PatternType::clique, PatternType::star,
                 PatternType::cycle, PatternType::chain}) {
    if (pattern_name(t) == name) return t;
  }
  return std::nullopt;
}

std::uint32_t pattern_min_size(PatternType type) {
  switch (type) {
    case PatternType::node: return 1;
    case PatternType::cycle: return 3;
    default: return 2;
  }
}

std::vector<std::string> validate(const GeneratorConfig& config) {
  std::vector<std::string> out;
  std::visit(overloaded{
                 [&](const PatternParams& p) {
                   if (p.patterns.empty()) out.push_back("pattern config needs at least one pattern");
                   for (const auto& s : p.patterns) {
                     if (s.count < 1) out.push_back("pattern count must be >= 1");
                   }
                   validate_patterns(p.patterns, out);
                 },
                 [&](const HybridParams& p) {
                   validate_model(p.base, out);
                   validate_patterns(p.patterns, out);
                 },
                 [&](const auto& model) { validate_model(ModelParams(model), out); },
             },
             config.params);
  return out;
}

GenerationResult generate(const GeneratorConfig& config) {
  if (auto v = validate(config); !v.empty()) throw InvalidConfig(std::move(v));
  GenerationResult out;
  std::visit(overloaded{
                 [&](const PatternParams& p) {
                   // Instances are chained: each one after the first is wired to
                   // a uniform node of everything placed before it.
                   Rng rng(config.seed);
                   std::vector<Edge> edges;
                   NodeId offset = 0;
                   for (const auto& spec : p.patterns) {
                     const auto pattern_edges = gen_pattern(spec.type, spec.size).edge_list();
                     for (std::uint32_t c = 0; c < spec.count; ++c) {
                       for (auto [a, b] : pattern_edges) edges.emplace_back(a + offset, b + offset);
                       if (offset > 0 && p.wiring == Wiring::bridge) {
                         const NodeId inside = offset + static_cast<NodeId>(rng.below(spec.size));
                         const NodeId anchor = static_cast<NodeId>(rng.below(offset));
                         edges.emplace_back(anchor, inside);
                       }
                       offset += spec.size;
                     }
                   }
                   out.graph = Graph::from_edges(offset, edges);
                 },
                 [&](const HybridParams& p) {
                   Graph base = generate_model(p.base, config.seed, out.warnings);
                   out.graph = compose(base, p.patterns, p.wiring, mix_seed(config.seed, 1));
                 },
                 [&](const auto& model) {
                   out.graph = generate_model(ModelParams(model), config.seed, out.warnings);
                 },
             },
             config.params);
  return out;
}

Graph gen_erdos_renyi(NodeId n, double p, std::uint64_t seed) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must be in [0, 1]");
  std::vector<Edge> edges;
  if (n < 2 || p == 0) return Graph::from_edges(n, edges);
  if (p == 1) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.emplace_back(w, v);
    }
    return Graph::from_edges(n, edges);
  }
  // Geometric skipping over the lower-triangle pair sequence.
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  edges.reserve(static_cast<std::size_t>(p * 0.5 * n * (n - 1.0) * 1.1) + 16);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    double skip = std::floor(std::log(rng.uniform_open_zero()) / log_q);
    // cap to avoid overflow; anything past the remaining pairs ends the loop
    w += 1 + static_cast<std::int64_t>(std::min(skip, 4.0e18));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph gen_preferential_attachment(NodeId n, std::uint32_t m_attach, std::uint64_t seed,
                                  std::optional<std::uint32_t> seed_clique_size) {
  PreferentialAttachmentParams params{n, m_attach, seed_clique_size};
  std::vector<std::string> violations;
  validate_model(params, violations);
  if (!violations.empty()) throw InvalidConfig(std::move(violations));

  const NodeId clique = seed_clique_size.value_or(m_attach + 1);
  std::vector<Edge> edges;
  // each entry is one edge endpoint, so uniform picks are degree-proportional
  std::vector<NodeId> endpoints;
  for (NodeId a = 0; a < clique; ++a) {
    for (NodeId b = a + 1; b < clique; ++b) {
      edges.emplace_back(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  Rng rng(seed);
  std::vector<NodeId> chosen;
  for (NodeId t = clique; t < n; ++t) {
    chosen.clear();
    while (chosen.size() < m_attach) {
      NodeId target = endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
    }
    for (NodeId target : chosen) {
      edges.emplace_back(target, t);
      endpoints.push_back(target);
      endpoints.push_back(t);
    }
  }
  return Graph::from_edges(n, edges);
}

GenerationResult gen_chung_lu(std::span<const double> weights, std::uint64_t seed) {
  check_weights(weights);
  const auto n = static_cast<NodeId>(weights.size());
  GenerationResult out;
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<Edge> edges;
  if (total > 0) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    auto order = sorted_by_weight(std::move(all), weights);
    const double scale = 1.0 / total;
    if (auto w = clamp_warning(order, weights, scale, "")) out.warnings.push_back(*w);
    Rng rng(seed);
    chung_lu_sorted(order, weights, scale, rng, [&](NodeId a, NodeId b) { edges.emplace_back(a, b); });
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

double block_pair_probability(double wi, double wj, bool same_block, double block_total, double total,
                              double mu) {
  if (total <= 0) return 0;
  double scale = mu / total;
  if (same_block && block_total > 0) scale += (1 - mu) / block_total;
  return std::min(1.0, scale * wi * wj);
}

GenerationResult gen_block_chung_lu(std::span<const NodeId> block_sizes, std::span<const double> weights,
                                    double mu, std::uint64_t seed) {
  BlockChungLuParams params{{block_sizes.begin(), block_sizes.end()}, {weights.begin(), weights.end()}, mu};
  std::vector<std::string> violations;
  validate_model(params, violations);
  if (!violations.empty()) throw InvalidConfig(std::move(violations));

  const auto n = static_cast<NodeId>(weights.size());
  std::vector<std::uint32_t> block_of(n);
  GenerationResult out;
  std::vector<Edge> edges;
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0) {
    out.graph = Graph::from_edges(n, edges);
    return out;
  }

  Rng rng(seed);
  NodeId start = 0;
  for (std::uint32_t b = 0; b < block_sizes.size(); ++b) {
    std::vector<NodeId> members(block_sizes[b]);
    std::iota(members.begin(), members.end(), start);
    for (NodeId v : members) block_of[v] = b;
    start += block_sizes[b];
    double block_total = 0;
    for (NodeId v : members) block_total += weights[v];
    if (block_total <= 0) continue;
    auto order = sorted_by_weight(std::move(members), weights);
    const double scale = (1 - mu) / block_total + mu / total;
    if (auto w = clamp_warning(order, weights, scale, "block " + std::to_string(b))) out.warnings.push_back(*w);
    chung_lu_sorted(order, weights, scale, rng, [&](NodeId a, NodeId c) { edges.emplace_back(a, c); });
  }

  if (mu > 0) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    auto order = sorted_by_weight(std::move(all), weights);
    // intra-block pairs were already drawn with their full probability above
    chung_lu_sorted(order, weights, mu / total, rng, [&](NodeId a, NodeId c) {
      if (block_of[a] != block_of[c]) edges.emplace_back(a, c);
    });
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

BlockEdgeExpectation expected_block_edges(std::span<const NodeId> block_sizes, std::span<const double> weights,
                                          double mu) {
  const std::size_t n = weights.size();
  std::vector<std::uint32_t> block_of(n);
  std::vector<double> block_total(block_sizes.size(), 0.0);
  std::size_t v = 0;
  for (std::uint32_t b = 0; b < block_sizes.size(); ++b) {
    for (NodeId i = 0; i < block_sizes[b] && v < n; ++i, ++v) {
      block_of[v] = b;
      block_total[b] += weights[v];
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  BlockEdgeExpectation out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = block_of[i] == block_of[j];
      const double p = block_pair_probability(weights[i], weights[j], same, block_total[block_of[i]], total, mu);
      (same ? out.intra : out.inter) += p;
    }
  }
  return out;
}

BlockEdgeExpectation count_block_edges(const Graph& g, std::span<const NodeId> block_sizes) {
  std::vector<std::uint32_t> block_of(g.num_nodes(), 0);
  NodeId v = 0;
  for (std::uint32_t b = 0; b < block_sizes.size(); ++b) {
    for (NodeId i = 0; i < block_sizes[b] && v < g.num_nodes(); ++i, ++v) block_of[v] = b;
  }
  BlockEdgeExpectation out;
  for (auto [a, b] : g.edge_list()) (block_of[a] == block_of[b] ? out.intra : out.inter) += 1;
  return out;
}

Graph gen_pattern(PatternType type, std::uint32_t size) {
  if (size < pattern_min_size(type) || (type == PatternType::edge && size != 2)) {
    throw std::invalid_argument(std::string(pattern_name(type)) + " pattern of size " + std::to_string(size) +
                                " is below the minimum");
  }
  std::vector<Edge> edges;
  switch (type) {
    case PatternType::node:
      break;
    case PatternType::edge:
      edges.emplace_back(0, 1);
      break;
    case PatternType::clique:
      for (NodeId a = 0; a < size; ++a) {
        for (NodeId b = a + 1; b < size; ++b) edges.emplace_back(a, b);
      }
      break;
    case PatternType::star:
      for (NodeId leaf = 1; leaf < size; ++leaf) edges.emplace_back(0, leaf);
      break;
    case PatternType::cycle:
      for (NodeId a = 0; a < size; ++a) edges.emplace_back(a, (a + 1) % size);
      break;
    case PatternType::chain:
      for (NodeId a = 0; a + 1 < size; ++a) edges.emplace_back(a, a + 1);
      break;
  }
  return Graph::from_edges(size, edges);
}

Graph compose(const Graph& base, std::span<const PatternSpec> patterns, Wiring wiring, std::uint64_t seed) {
  std::vector<std::string> violations;
  validate_patterns(patterns, violations);
  if (!violations.empty()) throw InvalidConfig(std::move(violations));
  const bool has_instances =
      std::any_of(patterns.begin(), patterns.end(), [](const PatternSpec& s) { return s.count > 0; });
  if (wiring == Wiring::bridge && base.num_nodes() == 0 && has_instances) {
    throw std::invalid_argument("bridge wiring requires a non-empty base graph");
  }

  Rng rng(seed);
  std::vector<Edge> edges = base.edge_list();
  NodeId offset = base.num_nodes();
  for (const auto& spec : patterns) {
    const Graph instance = gen_pattern(spec.type, spec.size);
    const auto pattern_edges = instance.edge_list();
    for (std::uint32_t c = 0; c < spec.count; ++c) {
      for (auto [a, b] : pattern_edges) edges.emplace_back(a + offset, b + offset);
      if (wiring == Wiring::bridge) {
        NodeId inside = offset + static_cast<NodeId>(rng.below(spec.size));
        NodeId anchor = static_cast<NodeId>(rng.below(base.num_nodes()));
        edges.emplace_back(anchor, inside);
      }
      offset += spec.size;
    }
  }
  return Graph::from_edges(offset, edges);
}

}  // namespace netrepo
