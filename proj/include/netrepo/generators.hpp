#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netrepo/graph.hpp"
#include "netrepo/rng.hpp"

namespace netrepo {

struct ErdosRenyiParams {
  NodeId n = 0;
  double p = 0;
};

struct PreferentialAttachmentParams {
  NodeId n = 0;
  std::uint32_t m_attach = 1;
  std::optional<std::uint32_t> seed_clique_size;  // defaults to m_attach + 1
};

struct ChungLuParams {
  std::vector<double> weights;
};

struct BlockChungLuParams {
  std::vector<NodeId> block_sizes;
  std::vector<double> weights;  // length = sum of block_sizes, block-major
  double mu = 0;
};

enum class PatternType { node, edge, clique, star, cycle, chain };
enum class Wiring { bridge, disjoint };

struct PatternSpec {
  PatternType type = PatternType::clique;
  std::uint32_t size = 2;
  std::uint32_t count = 1;
};

struct PatternParams {
  std::vector<PatternSpec> patterns;
  Wiring wiring = Wiring::bridge;
};

using ModelParams =
    std::variant<ErdosRenyiParams, PreferentialAttachmentParams, ChungLuParams, BlockChungLuParams>;

struct HybridParams {
  ModelParams base;
  std::vector<PatternSpec> patterns;
  Wiring wiring = Wiring::bridge;
};

struct GeneratorConfig {
  std::variant<ErdosRenyiParams, PreferentialAttachmentParams, ChungLuParams, BlockChungLuParams,
               PatternParams, HybridParams>
      params;
  std::uint64_t seed = 0;
};

class InvalidConfig : public std::invalid_argument {
 public:
  explicit InvalidConfig(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

std::string_view kind_name(const GeneratorConfig& config);
std::string_view pattern_name(PatternType type);
std::optional<PatternType> pattern_from_name(std::string_view name);
std::uint32_t pattern_min_size(PatternType type);

// Every violated constraint, as a human-readable message. Empty when valid.
std::vector<std::string> validate(const GeneratorConfig& config);

struct GenerationResult {
  Graph graph;
  std::vector<std::string> warnings;
};

// Validates, then dispatches on the config kind.
GenerationResult generate(const GeneratorConfig& config);

Graph gen_erdos_renyi(NodeId n, double p, std::uint64_t seed);
Graph gen_preferential_attachment(NodeId n, std::uint32_t m_attach, std::uint64_t seed,
                                  std::optional<std::uint32_t> seed_clique_size = std::nullopt);
GenerationResult gen_chung_lu(std::span<const double> weights, std::uint64_t seed);
GenerationResult gen_block_chung_lu(std::span<const NodeId> block_sizes,
                                    std::span<const double> weights, double mu, std::uint64_t seed);
Graph gen_pattern(PatternType type, std::uint32_t size);
Graph compose(const Graph& base, std::span<const PatternSpec> patterns, Wiring wiring,
              std::uint64_t seed);

// Block Chung-Lu pair probabilities: two nodes of the same block b connect
// with min(1, w_i w_j ((1 - mu) / S_b + mu / S)); nodes in different blocks
// with min(1, mu w_i w_j / S). S is the total weight and S_b the weight of
// block b. Expected degrees equal the weights when nothing clamps.
double block_pair_probability(double wi, double wj, bool same_block, double block_total,
                              double total, double mu);

struct BlockEdgeExpectation {
  double intra = 0;
  double inter = 0;
  double intra_fraction() const { return intra + inter > 0 ? intra / (intra + inter) : 0.0; }
};

// Closed-form expected intra- and inter-block edge counts (O(n^2)).
BlockEdgeExpectation expected_block_edges(std::span<const NodeId> block_sizes,
                                          std::span<const double> weights, double mu);

// Realized intra- and inter-block edge counts of a block-major node layout.
BlockEdgeExpectation count_block_edges(const Graph& g, std::span<const NodeId> block_sizes);

}  // namespace netrepo
