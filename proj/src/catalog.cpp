#include "netrepo/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>

#include "netrepo/edge_list.hpp"
#include "netrepo/layout.hpp"
#include "netrepo/sampler.hpp"
#include "netrepo/serialize.hpp"

namespace netrepo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kDefaultCollections{
    "social", "information", "biological", "technological", "collaboration",
    "web",    "infrastructure", "synthetic", "misc"};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + p.string());
}

// Write-to-temp then rename, so readers see the old or the new file.
void replace_file(const fs::path& p, std::string_view content) {
  fs::path tmp = p;
  tmp += ".tmp";
  write_file(tmp, content);
  fs::rename(tmp, p);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

DatasetSource source_from_name(const std::string& s) {
  if (s == "generated") return DatasetSource::generated;
  if (s == "bundled") return DatasetSource::bundled;
  return DatasetSource::uploaded;
}

json labeling_for(const Graph& shown, VizLabels labels, std::uint64_t seed, unsigned workers) {
  if (labels == VizLabels::none || shown.num_nodes() == 0) return nullptr;
  if (labels == VizLabels::community) return to_json(detect_communities(shown, seed));
  auto stats = compute_all(shown, workers);
  auto features = extract_role_features(shown, stats.nodes);
  return to_json(discover_roles(features, std::nullopt, seed));
}

}  // namespace

std::string_view source_name(DatasetSource s) {
  switch (s) {
    case DatasetSource::uploaded: return "uploaded";
    case DatasetSource::generated: return "generated";
    case DatasetSource::bundled: return "bundled";
  }
  return "uploaded";
}

json to_json(const DatasetRecord& r) {
  return {{"id", r.id},
          {"name", r.name},
          {"collection", r.collection},
          {"source", source_name(r.source)},
          {"metadata",
           {{"description", r.description}, {"citation", r.citation}, {"notes", r.notes}, {"extra", r.extra}}},
          {"stats", to_json(r.stats)},
          {"processed", r.processed},
          {"created_at", r.created_at},
          {"url", "/graphs/" + r.id},
          {"paths",
           {{"edges", r.paths.edges},
            {"node_stats", r.paths.node_stats},
            {"layout", r.paths.layout},
            {"labels", r.paths.labels}}},
          {"aliases", r.aliases}};
}

DatasetRecord dataset_record_from_json(const json& j) {
  DatasetRecord r;
  r.id = j.at("id").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.collection = j.at("collection").get<std::string>();
  r.source = source_from_name(j.at("source").get<std::string>());
  const auto& meta = j.at("metadata");
  r.description = meta.value("description", "");
  r.citation = meta.value("citation", "");
  r.notes = meta.value("notes", std::vector<std::string>{});
  r.extra = meta.value("extra", json::object());
  r.stats = graph_stats_from_json(j.at("stats"));
  r.processed = j.at("processed").get<bool>();
  r.created_at = j.at("created_at").get<std::string>();
  const auto& paths = j.at("paths");
  r.paths = {paths.at("edges").get<std::string>(), paths.at("node_stats").get<std::string>(),
             paths.at("layout").get<std::string>(), paths.at("labels").get<std::string>()};
  r.aliases = j.value("aliases", std::vector<std::string>{});
  return r;
}

Catalog::Catalog(fs::path root, CatalogOptions options) : root_(std::move(root)), options_(options) {
  fs::create_directories(root_ / "datasets");
  fs::remove_all(root_ / "staging");
  fs::create_directories(root_ / "staging");
  const auto taxonomy = root_ / "collections.json";
  if (fs::exists(taxonomy)) {
    collections_ = json::parse(read_file(taxonomy)).get<std::vector<std::string>>();
  } else {
    collections_ = kDefaultCollections;
    replace_file(taxonomy, json(collections_).dump(2));
  }
  load_index();
}

std::vector<std::string> Catalog::collections() const { return collections_; }

void Catalog::load_index() {
  const auto index = root_ / "catalog.json";
  if (!fs::exists(index)) return;
  const json j = json::parse(read_file(index));
  for (const auto& r : j.at("records")) {
    records_.push_back(dataset_record_from_json(r));
    by_id_[records_.back().id] = records_.size() - 1;
  }
  for (const auto& [alias, id] : j.at("aliases").items()) aliases_[alias] = id.get<std::string>();
  for (const auto& s : j.at("used_slugs")) used_slugs_.insert(s.get<std::string>());
}

void Catalog::save_index_locked() const {
  json records = json::array();
  for (const auto& r : records_) records.push_back(to_json(r));
  json aliases = json::object();
  for (const auto& [alias, id] : aliases_) aliases[alias] = id;
  json j = {{"records", records}, {"aliases", aliases}, {"used_slugs", used_slugs_}};
  replace_file(root_ / "catalog.json", j.dump());
}

std::string Catalog::slugify(std::string_view name) {
  std::string out;
  bool dash = false;
  for (char c : name) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      if (dash && !out.empty()) out += '-';
      dash = false;
      out += static_cast<char>(std::tolower(uc));
    } else {
      dash = true;
    }
    if (out.size() >= 64) break;
  }
  return out.empty() ? "graph" : out;
}

std::string Catalog::reserve_slug(const std::string& name) {
  const std::string base = slugify(name);
  std::unique_lock lock(mutex_);
  std::string slug = base;
  for (int suffix = 2; used_slugs_.contains(slug) || pending_slugs_.contains(slug); ++suffix) {
    slug = base + "-" + std::to_string(suffix);
  }
  pending_slugs_.insert(slug);
  return slug;
}

void Catalog::release_slug(const std::string& slug) {
  std::unique_lock lock(mutex_);
  pending_slugs_.erase(slug);
}

void Catalog::check_collection(const std::string& collection) const {
  if (std::find(collections_.begin(), collections_.end(), collection) == collections_.end()) {
    std::string known;
    for (const auto& c : collections_) known += (known.empty() ? "" : ", ") + c;
    throw ServiceError(400, "unknown collection '" + collection + "' (known: " + known + ")");
  }
}

fs::path Catalog::dataset_dir(std::string_view id) const { return root_ / "datasets" / std::string(id); }

BuiltGraph Catalog::parse_payload(std::string_view payload, std::vector<std::string>* labels) {
  EdgeListFile raw;
  try {
    raw = parse_edge_list(payload);
  } catch (const ParseError& e) {
    throw ServiceError(400, std::string("parse error: ") + e.what());
  }
  BuiltGraph built;
  try {
    built = build_graph(raw);
  } catch (const std::out_of_range& e) {
    throw ServiceError(400, e.what());
  }
  if (built.graph.num_nodes() == 0) throw ServiceError(400, "no edges or nodes");
  if (labels) *labels = std::move(raw.labels);
  return built;
}

ProcessedGraph Catalog::process(Graph graph, std::vector<std::string> labels) const {
  ProcessedGraph p;
  p.stats = compute_all(graph, options_.workers);
  p.layout = build_visualization(graph, options_.viz_nodes, kDefaultVizSeed, VizLabels::none);
  p.graph = std::move(graph);
  p.labels = std::move(labels);
  return p;
}

DatasetRecord Catalog::ingest(const IngestRequest& request) {
  const std::string collection = request.collection.empty() ? "misc" : request.collection;
  check_collection(collection);
  std::vector<std::string> labels;
  auto built = parse_payload(request.payload, &labels);
  json extra = {{"normalization", to_json(built.report)}};
  auto processed = process(std::move(built.graph), std::move(labels));
  return publish(std::move(processed), request.name, collection, DatasetSource::uploaded, request.description,
                 request.citation, std::move(extra));
}

DatasetRecord Catalog::generate(const GeneratorConfig& config, const std::string& name,
                                const std::string& collection_in) {
  const std::string collection = collection_in.empty() ? "synthetic" : collection_in;
  check_collection(collection);
  GenerationResult result;
  try {
    result = netrepo::generate(config);
  } catch (const InvalidConfig& e) {
    throw ServiceError(400, e.what());
  }
  if (result.graph.num_nodes() == 0) throw ServiceError(400, "no edges or nodes");
  json extra = {{"generator", to_json(config)}, {"warnings", result.warnings}};
  if (auto readout = block_readout(config, result.graph); !readout.is_null()) extra["block_edges"] = readout;
  std::vector<std::string> labels;
  labels.reserve(result.graph.num_nodes());
  for (NodeId v = 0; v < result.graph.num_nodes(); ++v) labels.push_back(std::to_string(v));
  auto processed = process(std::move(result.graph), std::move(labels));
  const std::string display = name.empty() ? std::string(kind_name(config)) : name;
  return publish(std::move(processed), display, collection, DatasetSource::generated, "", "", std::move(extra));
}

DatasetRecord Catalog::publish(ProcessedGraph processed, std::string name, std::string collection,
                               DatasetSource source, std::string description, std::string citation, json extra) {
  check_collection(collection);
  if (name.empty()) name = "graph";
  const std::string slug = reserve_slug(name);
  const fs::path staging = root_ / "staging" / slug;
  try {
    fs::remove_all(staging);
    fs::create_directories(staging);

    DatasetRecord r;
    r.id = slug;
    r.name = std::move(name);
    r.collection = std::move(collection);
    r.source = source;
    r.description = std::move(description);
    r.citation = std::move(citation);
    r.extra = std::move(extra);
    r.stats = processed.stats.graph;
    r.processed = true;
    r.created_at = utc_now();
    const std::string rel = "datasets/" + slug + "/";
    r.paths = {rel + "graph.edges", rel + "nodes.json", rel + "layout.json", rel + "labels.json"};

    write_file(staging / "graph.edges", processed.graph.dump());
    write_file(staging / "stats.json", dump_stats(processed.stats.graph));
    write_file(staging / "nodes.json", to_json(processed.stats.nodes).dump());
    write_file(staging / "layout.json", processed.layout.dump());
    write_file(staging / "labels.json", json(processed.labels).dump());
    write_file(staging / "record.json", to_json(r).dump());

    const fs::path final_dir = dataset_dir(slug);
    fs::remove_all(final_dir);
    fs::rename(staging, final_dir);

    std::unique_lock lock(mutex_);
    pending_slugs_.erase(slug);
    used_slugs_.insert(slug);
    records_.push_back(r);
    by_id_[slug] = records_.size() - 1;
    save_index_locked();
    return r;
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    release_slug(slug);
    throw;
  }
}

std::vector<DatasetRecord> Catalog::list() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::string Catalog::resolve_locked(std::string_view id_or_alias) const {
  if (by_id_.contains(id_or_alias)) return std::string(id_or_alias);
  if (auto it = aliases_.find(id_or_alias); it != aliases_.end()) return it->second;
  throw ServiceError(404, "unknown graph '" + std::string(id_or_alias) + "'");
}

std::string Catalog::resolve(std::string_view id_or_alias) const {
  std::shared_lock lock(mutex_);
  return resolve_locked(id_or_alias);
}

std::optional<DatasetRecord> Catalog::find(std::string_view id_or_alias) const {
  std::shared_lock lock(mutex_);
  try {
    return records_[by_id_.find(resolve_locked(id_or_alias))->second];
  } catch (const ServiceError&) {
    return std::nullopt;
  }
}

DatasetRecord Catalog::get(std::string_view id_or_alias) const {
  std::shared_lock lock(mutex_);
  return records_[by_id_.find(resolve_locked(id_or_alias))->second];
}

DatasetRecord Catalog::add_note(std::string_view id, std::string note) {
  if (note.empty()) throw ServiceError(400, "note must not be empty");
  std::unique_lock lock(mutex_);
  auto& r = records_[by_id_.find(resolve_locked(id))->second];
  r.notes.push_back(std::move(note));
  save_index_locked();
  return r;
}

DatasetRecord Catalog::rename(std::string_view id, std::string new_name) {
  if (new_name.empty()) throw ServiceError(400, "name must not be empty");
  const std::string alias = reserve_slug(new_name);
  std::unique_lock lock(mutex_);
  pending_slugs_.erase(alias);
  auto& r = records_[by_id_.find(resolve_locked(id))->second];
  used_slugs_.insert(alias);
  aliases_[alias] = r.id;
  r.aliases.push_back(alias);
  r.name = std::move(new_name);
  save_index_locked();
  return r;
}

Graph Catalog::load_graph(std::string_view id) const {
  const auto dump = load_dump(id);
  return build_graph(parse_edge_list(dump)).graph;
}

std::string Catalog::load_dump(std::string_view id) const {
  return read_file(dataset_dir(resolve(id)) / "graph.edges");
}

NodeStatsTable Catalog::load_node_stats(std::string_view id) const {
  return node_stats_from_json(json::parse(read_file(dataset_dir(resolve(id)) / "nodes.json")));
}

std::vector<std::string> Catalog::load_labels(std::string_view id) const {
  return json::parse(read_file(dataset_dir(resolve(id)) / "labels.json")).get<std::vector<std::string>>();
}

json Catalog::load_layout(std::string_view id) const {
  return json::parse(read_file(dataset_dir(resolve(id)) / "layout.json"));
}

PointTable Catalog::graph_table() const {
  std::shared_lock lock(mutex_);
  PointTable t;
  for (const auto& name : GraphStats::field_names()) t.columns[name];
  for (const auto& r : records_) {
    t.ids.push_back(r.id);
    for (const auto& name : GraphStats::field_names()) t.columns[name].push_back(r.stats.value(name));
  }
  return t;
}

PointTable Catalog::node_table(const NodeStatsTable& stats) {
  PointTable t;
  for (const auto& name : NodeStatsTable::column_names()) t.columns[name].reserve(stats.size());
  for (std::size_t v = 0; v < stats.size(); ++v) {
    t.ids.push_back(std::to_string(v));
    for (const auto& name : NodeStatsTable::column_names()) {
      t.columns[name].push_back(stats.value(name, static_cast<NodeId>(v)));
    }
  }
  return t;
}

json Catalog::block_readout(const GeneratorConfig& config, const Graph& g) {
  const auto* p = std::get_if<BlockChungLuParams>(&config.params);
  if (!p) return nullptr;
  const auto counts = count_block_edges(g, p->block_sizes);
  json out = {{"intra", counts.intra}, {"inter", counts.inter}, {"intra_fraction", counts.intra_fraction()},
              {"mu", p->mu}, {"expected_intra_fraction", nullptr}};
  if (p->weights.size() <= kBlockExpectationNodes) {
    out["expected_intra_fraction"] = expected_block_edges(p->block_sizes, p->weights, p->mu).intra_fraction();
  }
  return out;
}

json Catalog::build_visualization(const Graph& g, std::uint32_t max_nodes, std::uint64_t seed,
                                  VizLabels labels) const {
  if (max_nodes == 0) throw ServiceError(400, "max_nodes must be >= 1");
  Graph shown;
  std::vector<NodeId> ids;
  const bool sampled = g.num_nodes() > max_nodes;
  if (!sampled) {
    shown = g;
    ids.resize(g.num_nodes());
    std::iota(ids.begin(), ids.end(), 0);
  } else if (g.num_edges() > 0) {
    auto s = sample_induced_edge_nodes(g, max_nodes, seed);
    shown = std::move(s.graph);
    ids = std::move(s.original_ids);
  } else {
    ids.resize(max_nodes);
    std::iota(ids.begin(), ids.end(), 0);
    shown = g.induced_subgraph(ids);
  }
  const auto positions = compute_layout(shown, seed, options_.layout_iterations);
  json edges = json::array();
  for (auto [a, b] : shown.edge_list()) edges.push_back({a, b});
  json out = {{"n_total", g.num_nodes()}, {"m_total", g.num_edges()}, {"sampled", sampled},
              {"max_nodes", max_nodes},   {"seed", seed},                {"nodes", ids},
              {"positions", to_json(positions)}, {"edges", std::move(edges)}};
  if (labels != VizLabels::none) out["labeling"] = labeling_for(shown, labels, seed, options_.workers);
  return out;
}

json Catalog::visualization(std::string_view id, std::uint32_t max_nodes, VizLabels labels,
                            std::uint64_t seed) const {
  const auto record = get(id);
  json out;
  if (max_nodes == options_.viz_nodes && seed == kDefaultVizSeed) {
    out = load_layout(record.id);
    if (labels != VizLabels::none) {
      const Graph g = load_graph(record.id);
      const auto ids = out.at("nodes").get<std::vector<NodeId>>();
      const Graph shown = out.at("sampled").get<bool>() ? g.induced_subgraph(ids) : g;
      out["labeling"] = labeling_for(shown, labels, seed, options_.workers);
    }
  } else {
    out = build_visualization(load_graph(record.id), max_nodes, seed, labels);
  }
  out["id"] = record.id;
  return out;
}

}  // namespace netrepo
