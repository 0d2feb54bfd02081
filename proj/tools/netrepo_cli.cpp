// netrepo: command-line front end for the graph engine and the catalog service.
//
// Exit codes: 0 success, 1 input error, 2 usage error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "netrepo/catalog.hpp"
#include "netrepo/clustering.hpp"
#include "netrepo/edge_list.hpp"
#include "netrepo/generators.hpp"
#include "netrepo/layout.hpp"
#include "netrepo/sampler.hpp"
#include "netrepo/serialize.hpp"
#include "netrepo/server.hpp"
#include "netrepo/stats.hpp"
#include "netrepo/workspace.hpp"

using namespace netrepo;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedGraph {
  Graph graph;
  std::vector<std::string> labels;
};

LoadedGraph load_graph(const std::string& path) {
  const auto text = read_input(path);
  try {
    auto raw = parse_edge_list(text);
    auto built = build_graph(raw);
    return {std::move(built.graph), std::move(raw.labels)};
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw InputError(path + ": " + e.what());
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// Same number text as the JSON output; null becomes an empty cell.
std::string csv_value(const json& v) { return v.is_null() ? "" : v.is_string() ? v.get<std::string>() : v.dump(); }

void write_labeling(std::ostream& out, const std::string& format, const NodeLabeling& l,
                    const std::vector<std::string>& names) {
  if (format == "csv") {
    out << "node,label\n";
    for (std::size_t v = 0; v < l.labels.size(); ++v) out << names[v] << ',' << l.labels[v] << '\n';
    return;
  }
  json j = to_json(l);
  j["nodes"] = names;
  out << j.dump() << '\n';
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string token;
  std::istringstream ss(text);
  while (ss >> token) {
    std::istringstream items(token);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw InputError(what + ": '" + item + "' is not a number");
      }
    }
  }
  return out;
}

// "type:size[:count]"
json parse_pattern(const std::string& spec) {
  std::vector<std::string> parts;
  std::istringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3) throw InputError("pattern must be type:size[:count], got " + spec);
  try {
    json p = {{"type", parts[0]}, {"size", std::stoul(parts[1])}};
    p["count"] = parts.size() == 3 ? std::stoul(parts[2]) : 1;
    return p;
  } catch (const std::logic_error&) {
    throw InputError("pattern must be type:size[:count], got " + spec);
  }
}

struct GenerateFlags {
  std::string config_path;
  std::string kind;
  std::string base;
  std::optional<std::uint64_t> n;
  std::optional<double> p;
  std::optional<std::uint32_t> m_attach;
  std::optional<std::uint32_t> seed_clique;
  std::string weights;
  std::string weights_file;
  std::string block_sizes;
  std::optional<double> mu;
  std::vector<std::string> patterns;
  std::string wiring = "bridge";
  std::uint64_t seed = 0;
  std::string format = "edgelist";
  std::string output;
};

json model_json(const std::string& kind, const GenerateFlags& f) {
  json j = {{"kind", kind}};
  if (f.n) j["n"] = *f.n;
  if (f.p) j["p"] = *f.p;
  if (f.m_attach) j["m_attach"] = *f.m_attach;
  if (f.seed_clique) j["seed_clique_size"] = *f.seed_clique;
  if (f.mu) j["mu"] = *f.mu;
  std::string weights = f.weights;
  if (!f.weights_file.empty()) weights += " " + read_input(f.weights_file);
  if (!weights.empty()) j["weights"] = parse_numbers(weights, "weights");
  if (!f.block_sizes.empty()) {
    json sizes = json::array();
    for (double b : parse_numbers(f.block_sizes, "block-sizes")) {
      if (b < 0 || b != static_cast<double>(static_cast<std::uint64_t>(b))) {
        throw InputError("block-sizes must be non-negative integers");
      }
      sizes.push_back(static_cast<std::uint64_t>(b));
    }
    j["block_sizes"] = sizes;
  }
  return j;
}

json config_from_flags(const GenerateFlags& f) {
  json j;
  if (!f.config_path.empty()) {
    try {
      j = json::parse(read_input(f.config_path));
    } catch (const json::parse_error& e) {
      throw InputError(f.config_path + ": " + e.what());
    }
    if (f.seed != 0) j["seed"] = f.seed;
    return j;
  }
  if (f.kind.empty()) throw CLI::RequiredError("--kind or --config");
  json patterns = json::array();
  for (const auto& s : f.patterns) patterns.push_back(parse_pattern(s));
  if (f.kind == "pattern") {
    j = {{"kind", "pattern"}, {"patterns", patterns}, {"wiring", f.wiring}};
  } else if (f.kind == "hybrid") {
    if (f.base.empty()) throw CLI::RequiredError("--base");
    j = {{"kind", "hybrid"}, {"base", model_json(f.base, f)}, {"patterns", patterns}, {"wiring", f.wiring}};
  } else {
    j = model_json(f.kind, f);
  }
  j["seed"] = f.seed;
  return j;
}

volatile std::sig_atomic_t g_stop = 0;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netrepo: graph statistics, generators and catalog service"};
  app.require_subcommand(1);
  app.allow_extras(false);

  std::string input;
  std::string output;
  std::string format = "json";
  unsigned workers = default_workers();
  std::uint64_t seed = 0;

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Graph-level (or per-node) statistics");
  bool per_node = false;
  stats_cmd->add_option("-i,--input", input, "Edge list file, - for stdin")->required();
  stats_cmd->add_option("-f,--format", format)->check(CLI::IsMember({"json", "csv"}));
  stats_cmd->add_option("-o,--output", output);
  stats_cmd->add_option("-w,--workers", workers)->check(CLI::Range(1u, 1024u));
  stats_cmd->add_flag("--nodes", per_node, "Emit the per-node table instead");

  // dist
  auto* dist_cmd = app.add_subcommand("dist", "Distribution (pdf/cdf/ccdf) of a node statistic");
  std::string statistic = "degree";
  dist_cmd->add_option("-i,--input", input)->required();
  dist_cmd->add_option("-s,--stat", statistic)->check(CLI::IsMember(NodeStatsTable::column_names()));
  dist_cmd->add_option("-f,--format", format)->check(CLI::IsMember({"json", "csv"}));
  dist_cmd->add_option("-o,--output", output);
  dist_cmd->add_option("-w,--workers", workers)->check(CLI::Range(1u, 1024u));

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic graph");
  GenerateFlags gen;
  gen_cmd->add_option("--config", gen.config_path, "GeneratorConfig JSON file");
  gen_cmd->add_option("-k,--kind", gen.kind)
      ->check(CLI::IsMember(
          {"erdos_renyi", "preferential_attachment", "chung_lu", "block_chung_lu", "pattern", "hybrid"}));
  gen_cmd->add_option("--base", gen.base, "Base model of a hybrid config")
      ->check(CLI::IsMember({"erdos_renyi", "preferential_attachment", "chung_lu", "block_chung_lu"}));
  gen_cmd->add_option("-n,--n", gen.n);
  gen_cmd->add_option("-p,--p", gen.p);
  gen_cmd->add_option("--m-attach", gen.m_attach);
  gen_cmd->add_option("--seed-clique", gen.seed_clique);
  gen_cmd->add_option("--weights", gen.weights, "Comma/space separated weights");
  gen_cmd->add_option("--weights-file", gen.weights_file);
  gen_cmd->add_option("--block-sizes", gen.block_sizes);
  gen_cmd->add_option("--mu", gen.mu);
  gen_cmd->add_option("--pattern", gen.patterns, "type:size[:count], repeatable");
  gen_cmd->add_option("--wiring", gen.wiring)->check(CLI::IsMember({"bridge", "disjoint"}));
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("-f,--format", gen.format)->check(CLI::IsMember({"edgelist", "json"}));
  gen_cmd->add_option("-o,--output", gen.output);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Sample a subgraph");
  std::string method = "induced_edge";
  double fraction = 0.1;
  std::string sample_format = "edgelist";
  sample_cmd->add_option("-i,--input", input)->required();
  sample_cmd->add_option("-m,--method", method)->check(CLI::IsMember({"node", "edge", "induced_edge"}));
  sample_cmd->add_option("--fraction", fraction)
      ->check(CLI::Validator(
          [](const std::string& text) {
            double v = 0;
            if (!CLI::detail::lexical_cast(text, v) || !(v > 0.0 && v <= 1.0)) return std::string("must be in (0, 1]");
            return std::string();
          },
          "(0, 1]"));
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("-f,--format", sample_format)->check(CLI::IsMember({"edgelist", "json"}));
  sample_cmd->add_option("-o,--output", output);

  // communities
  auto* comm_cmd = app.add_subcommand("communities", "Label propagation communities");
  comm_cmd->add_option("-i,--input", input)->required();
  comm_cmd->add_option("--seed", seed);
  comm_cmd->add_option("-f,--format", format)->check(CLI::IsMember({"json", "csv"}));
  comm_cmd->add_option("-o,--output", output);

  // roles
  auto* roles_cmd = app.add_subcommand("roles", "Structural roles");
  std::optional<std::uint32_t> k;
  roles_cmd->add_option("-i,--input", input)->required();
  roles_cmd->add_option("-k,--k", k, "Role count (auto when omitted)")->check(CLI::Range(1u, 1000u));
  roles_cmd->add_option("--seed", seed);
  roles_cmd->add_option("-f,--format", format)->check(CLI::IsMember({"json", "csv"}));
  roles_cmd->add_option("-o,--output", output);
  roles_cmd->add_option("-w,--workers", workers)->check(CLI::Range(1u, 1024u));

  // layout
  auto* layout_cmd = app.add_subcommand("layout", "Force-directed layout");
  int iterations = kDefaultLayoutIterations;
  layout_cmd->add_option("-i,--input", input)->required();
  layout_cmd->add_option("--seed", seed);
  layout_cmd->add_option("--iterations", iterations)->check(CLI::Range(0, 100000));
  layout_cmd->add_option("-f,--format", format)->check(CLI::IsMember({"json", "csv"}));
  layout_cmd->add_option("-o,--output", output);

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP catalog service");
  std::string root = "netrepo-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  ServerOptions server_options;
  serve_cmd->add_option("-r,--root", root, "Catalog directory");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("-w,--workers", workers)->check(CLI::Range(1u, 1024u));
  serve_cmd->add_option("--job-workers", server_options.job_workers)->check(CLI::Range(1u, 64u));
  serve_cmd->add_option("--sync-edge-limit", server_options.sync_edge_limit);

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "Add an edge list to a catalog directory");
  IngestRequest request;
  ingest_cmd->add_option("-r,--root", root)->required();
  ingest_cmd->add_option("-i,--input", input)->required();
  ingest_cmd->add_option("--name", request.name);
  ingest_cmd->add_option("--collection", request.collection);
  ingest_cmd->add_option("--description", request.description);
  ingest_cmd->add_option("--citation", request.citation);
  ingest_cmd->add_option("-w,--workers", workers)->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stats_cmd) {
      const auto loaded = load_graph(input);
      const auto result = compute_all(loaded.graph, workers);
      Output out(output);
      auto& os = out.stream();
      if (per_node) {
        if (format == "json") {
          json j = to_json(result.nodes);
          j["nodes"] = loaded.labels;
          os << j.dump() << '\n';
        } else {
          os << "node";
          for (const auto& c : NodeStatsTable::column_names()) os << ',' << c;
          os << '\n';
          const json columns = to_json(result.nodes);
          for (NodeId v = 0; v < loaded.graph.num_nodes(); ++v) {
            os << loaded.labels[v];
            for (const auto& c : NodeStatsTable::column_names()) os << ',' << csv_value(columns.at(c).at(v));
            os << '\n';
          }
        }
      } else if (format == "json") {
        os << dump_stats(result.graph) << '\n';
      } else {
        os << "statistic,value\n";
        const json stats = to_json(result.graph);
        for (const auto& [key, value] : stats.items()) os << key << ',' << csv_value(value) << '\n';
      }
    } else if (*dist_cmd) {
      const auto loaded = load_graph(input);
      const auto table = compute_all(loaded.graph, workers).nodes;
      const auto d = distribution(table, statistic);
      Output out(output);
      if (format == "json") {
        out.stream() << to_json(d).dump() << '\n';
      } else {
        out.stream() << "value,pdf,cdf,ccdf\n";
        for (std::size_t i = 0; i < d.values.size(); ++i) {
          out.stream() << json(d.values[i]).dump() << ',' << json(d.pdf[i]).dump() << ','
                       << json(d.cdf[i]).dump() << ',' << json(d.ccdf[i]).dump() << '\n';
        }
      }
    } else if (*gen_cmd) {
      const auto config = generator_config_from_json(config_from_flags(gen));
      const auto result = generate(config);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      Output out(gen.output);
      if (gen.format == "edgelist") {
        out.stream() << result.graph.dump();
      } else {
        json edges = json::array();
        for (auto [a, b] : result.graph.edge_list()) edges.push_back({a, b});
        json j = {{"config", to_json(config)},
                  {"num_nodes", result.graph.num_nodes()},
                  {"edges", edges},
                  {"warnings", result.warnings}};
        if (auto readout = Catalog::block_readout(config, result.graph); !readout.is_null()) {
          j["block_edges"] = readout;
        }
        out.stream() << j.dump() << '\n';
      }
    } else if (*sample_cmd) {
      const auto loaded = load_graph(input);
      const auto s = sample(loaded.graph, *sample_method_from_name(method), fraction, seed);
      Output out(output);
      if (sample_format == "edgelist") {
        out.stream() << s.graph.dump();
      } else {
        json edges = json::array();
        for (auto [a, b] : s.graph.edge_list()) edges.push_back({a, b});
        json names = json::array();
        for (auto v : s.original_ids) names.push_back(loaded.labels[v]);
        out.stream() << json{{"method", method},
                             {"fraction", fraction},
                             {"seed", seed},
                             {"original_ids", s.original_ids},
                             {"nodes", names},
                             {"edges", edges}}
                            .dump()
                     << '\n';
      }
    } else if (*comm_cmd) {
      const auto loaded = load_graph(input);
      const auto labeling = detect_communities(loaded.graph, seed);
      Output out(output);
      write_labeling(out.stream(), format, labeling, loaded.labels);
    } else if (*roles_cmd) {
      const auto loaded = load_graph(input);
      const auto stats = compute_all(loaded.graph, workers);
      const auto features = extract_role_features(loaded.graph, stats.nodes);
      const auto labeling = discover_roles(features, k, seed);
      Output out(output);
      write_labeling(out.stream(), format, labeling, loaded.labels);
    } else if (*layout_cmd) {
      const auto loaded = load_graph(input);
      const auto positions = compute_layout(loaded.graph, seed, iterations);
      Output out(output);
      if (format == "json") {
        out.stream() << json{{"nodes", loaded.labels}, {"positions", to_json(positions)}}.dump() << '\n';
      } else {
        out.stream() << "node,x,y\n";
        for (std::size_t v = 0; v < positions.size(); ++v) {
          out.stream() << loaded.labels[v] << ',' << json(positions[v].x).dump() << ','
                       << json(positions[v].y).dump() << '\n';
        }
      }
    } else if (*serve_cmd) {
      CatalogOptions catalog_options;
      catalog_options.workers = workers;
      Catalog catalog(root, catalog_options);
      Workspace workspace(std::filesystem::path(root) / "workspaces");
      Server server(catalog, workspace, server_options);
      const int bound = server.start(host, port);
      std::cerr << "serving " << root << " on http://" << host << ':' << bound << '\n';
      std::signal(SIGINT, [](int) { g_stop = 1; });
      std::signal(SIGTERM, [](int) { g_stop = 1; });
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
      server.stop();
    } else if (*ingest_cmd) {
      CatalogOptions catalog_options;
      catalog_options.workers = workers;
      Catalog catalog(root, catalog_options);
      request.payload = read_input(input);
      if (request.name.empty()) request.name = std::filesystem::path(input).stem().string();
      std::cout << to_json(catalog.ingest(request)).dump() << '\n';
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidConfig& e) {
    std::cerr << "invalid config:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return 1;
  } catch (const ServiceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
