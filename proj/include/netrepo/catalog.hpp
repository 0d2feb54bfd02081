#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "netrepo/clustering.hpp"
#include "netrepo/edge_list.hpp"
#include "netrepo/generators.hpp"
#include "netrepo/graph.hpp"
#include "netrepo/query.hpp"
#include "netrepo/service_error.hpp"
#include "netrepo/stats.hpp"

namespace netrepo {

enum class DatasetSource { uploaded, generated, bundled };
std::string_view source_name(DatasetSource s);

struct DatasetPaths {
  std::string edges;
  std::string node_stats;
  std::string layout;
  std::string labels;
};

struct DatasetRecord {
  std::string id;
  std::string name;
  std::string collection;
  DatasetSource source = DatasetSource::uploaded;
  std::string description;
  std::string citation;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();  // generator config, normalization report
  GraphStats stats;
  bool processed = false;
  std::string created_at;
  DatasetPaths paths;
  std::vector<std::string> aliases;
};

nlohmann::json to_json(const DatasetRecord& r);
DatasetRecord dataset_record_from_json(const nlohmann::json& j);

struct IngestRequest {
  std::string name;
  std::string collection;
  std::string payload;  // edge list text
  std::string description;
  std::string citation;
};

inline constexpr std::uint32_t kDefaultVizNodes = 5000;
inline constexpr std::uint64_t kDefaultVizSeed = 0;
inline constexpr std::size_t kBlockExpectationNodes = 5000;

struct CatalogOptions {
  unsigned workers = default_workers();
  std::uint32_t viz_nodes = kDefaultVizNodes;
  int layout_iterations = 200;
};

// Everything the catalog computes for one graph before publishing it.
struct ProcessedGraph {
  Graph graph;
  std::vector<std::string> labels;
  StatsResult stats;
  nlohmann::json layout;
};

enum class VizLabels { none, community, role };

// File-system dataset store. Layout under the root:
//   catalog.json            index of published records, aliases, used slugs
//   collections.json        collection taxonomy (seeded when missing)
//   datasets/<id>/          graph.edges, stats.json, nodes.json, layout.json,
//                           labels.json, record.json
//   staging/                in-flight processing, never read back
// A dataset directory is renamed into place complete and the index is
// rewritten only afterwards, so readers never see a partial record.
class Catalog {
 public:
  explicit Catalog(std::filesystem::path root, CatalogOptions options = {});

  const std::filesystem::path& root() const { return root_; }
  const CatalogOptions& options() const { return options_; }
  std::vector<std::string> collections() const;

  // Parse + build only; lets the service size a job before processing.
  static BuiltGraph parse_payload(std::string_view payload, std::vector<std::string>* labels = nullptr);

  ProcessedGraph process(Graph graph, std::vector<std::string> labels) const;

  DatasetRecord ingest(const IngestRequest& request);
  DatasetRecord generate(const GeneratorConfig& config, const std::string& name, const std::string& collection);
  // Publishes an already-processed graph.
  DatasetRecord publish(ProcessedGraph processed, std::string name, std::string collection, DatasetSource source,
                        std::string description, std::string citation, nlohmann::json extra);

  std::vector<DatasetRecord> list() const;
  std::optional<DatasetRecord> find(std::string_view id_or_alias) const;
  DatasetRecord get(std::string_view id_or_alias) const;  // ServiceError 404

  DatasetRecord add_note(std::string_view id, std::string note);
  DatasetRecord rename(std::string_view id, std::string new_name);

  Graph load_graph(std::string_view id) const;
  std::string load_dump(std::string_view id) const;
  NodeStatsTable load_node_stats(std::string_view id) const;
  std::vector<std::string> load_labels(std::string_view id) const;
  nlohmann::json load_layout(std::string_view id) const;

  // Graph-level point table over every published record, catalog order.
  PointTable graph_table() const;
  static PointTable node_table(const NodeStatsTable& stats);

  nlohmann::json visualization(std::string_view id, std::uint32_t max_nodes, VizLabels labels,
                               std::uint64_t seed) const;
  // Layout payload for a graph: induced-edge sample when n > max_nodes.
  nlohmann::json build_visualization(const Graph& g, std::uint32_t max_nodes, std::uint64_t seed,
                                     VizLabels labels) const;

  static std::string slugify(std::string_view name);

  // Intra-block edge readout for Block Chung-Lu configs, null otherwise. The
  // closed-form expectation is included up to kBlockExpectationNodes nodes.
  static nlohmann::json block_readout(const GeneratorConfig& config, const Graph& g);

 private:
  std::string reserve_slug(const std::string& name);
  void release_slug(const std::string& slug);
  void save_index_locked() const;
  void load_index();
  std::filesystem::path dataset_dir(std::string_view id) const;
  std::string resolve(std::string_view id_or_alias) const;
  std::string resolve_locked(std::string_view id_or_alias) const;
  void check_collection(const std::string& collection) const;

  std::filesystem::path root_;
  CatalogOptions options_;
  std::vector<std::string> collections_;
  mutable std::shared_mutex mutex_;
  std::vector<DatasetRecord> records_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::string, std::less<>> aliases_;
  std::set<std::string, std::less<>> used_slugs_;
  std::set<std::string, std::less<>> pending_slugs_;
};

}  // namespace netrepo
