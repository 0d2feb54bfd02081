#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <memory>

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

namespace py = pybind11;
using namespace netrepo;

// JSON crosses the boundary as text; the Python package wraps it in dicts.
namespace {

Graph graph_from_edges(NodeId n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); }

py::tuple parse(const std::string& text) {
  const auto raw = parse_edge_list(text);
  auto built = build_graph(raw);
  return py::make_tuple(std::move(built.graph), raw.labels, to_json(built.report).dump());
}

std::string stats_json(const Graph& g, unsigned workers) {
  const auto s = compute_all(g, workers == 0 ? default_workers() : workers);
  return json{{"graph", to_json(s.graph)}, {"nodes", to_json(s.nodes)}}.dump();
}

std::string distribution_json(const Graph& g, const std::string& stat, unsigned workers) {
  return to_json(distribution(compute_all(g, workers == 0 ? default_workers() : workers).nodes, stat)).dump();
}

std::string roles_json(const Graph& g, std::optional<std::uint32_t> k, std::uint64_t seed) {
  const auto features = extract_role_features(g, compute_all(g).nodes);
  return to_json(discover_roles(features, k, seed)).dump();
}

py::tuple sample_graph(const Graph& g, const std::string& method, double fraction, std::uint64_t seed) {
  const auto m = sample_method_from_name(method);
  if (!m) throw std::invalid_argument("unknown sampling method '" + method + "'");
  auto s = sample(g, *m, fraction, seed);
  return py::make_tuple(std::move(s.graph), std::move(s.original_ids));
}

// Catalog and workspace under one root, with an optional HTTP server.
class Repository {
 public:
  Repository(const std::string& root, unsigned workers)
      : catalog_(root, CatalogOptions{workers == 0 ? default_workers() : workers}),
        workspace_(std::filesystem::path(root) / "workspaces") {}
  ~Repository() { stop(); }

  std::string ingest(const std::string& name, const std::string& payload, const std::string& collection,
                     const std::string& description, const std::string& citation) {
    py::gil_scoped_release release;
    return to_json(catalog_.ingest({name, collection, payload, description, citation})).dump();
  }
  std::string generate(const std::string& config, const std::string& name, const std::string& collection) {
    const auto parsed = generator_config_from_json(json::parse(config));
    py::gil_scoped_release release;
    return to_json(catalog_.generate(parsed, name, collection)).dump();
  }
  std::string list() const {
    json out = json::array();
    for (const auto& r : catalog_.list()) out.push_back(to_json(r));
    return out.dump();
  }
  std::string get(const std::string& id) const { return to_json(catalog_.get(id)).dump(); }
  std::string download(const std::string& id) const { return catalog_.load_dump(id); }
  Graph load_graph(const std::string& id) const { return catalog_.load_graph(id); }
  std::string query(const std::string& q) const {
    const auto table = catalog_.graph_table();
    return to_json(run_query(table, filter_query_from_json(json::parse(q))), table).dump();
  }

  int serve(const std::string& host, int port) {
    stop();
    server_ = std::make_unique<Server>(catalog_, workspace_);
    return server_->start(host, port);
  }
  void stop() {
    if (!server_) return;
    py::gil_scoped_release release;
    server_->stop();
    server_.reset();
  }

 private:
  Catalog catalog_;
  Workspace workspace_;
  std::unique_ptr<Server> server_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph statistics, generators, sampling and the dataset catalog";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", PyExc_ValueError);
  py::register_exception<QueryError>(m, "QueryError", PyExc_ValueError);
  py::register_exception<ServiceError>(m, "ServiceError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def_static("from_edges", &graph_from_edges, py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("degree", [](const Graph& g, NodeId v) {
        if (v >= g.num_nodes()) throw py::index_error("node out of range");
        return g.degree(v);
      })
      .def("degrees", &Graph::degrees)
      .def("neighbors", [](const Graph& g, NodeId v) {
        if (v >= g.num_nodes()) throw py::index_error("node out of range");
        auto nb = g.neighbors(v);
        return std::vector<NodeId>(nb.begin(), nb.end());
      })
      .def("has_edge", [](const Graph& g, NodeId u, NodeId v) {
        return u < g.num_nodes() && v < g.num_nodes() && g.has_edge(u, v);
      })
      .def("edges", &Graph::edge_list)
      .def("dump", &Graph::dump)
      .def(py::self == py::self)
      .def("__repr__", [](const Graph& g) {
        return "<netrepo.Graph n=" + std::to_string(g.num_nodes()) + " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def("parse_edge_list", &parse, py::arg("text"));
  m.def("stats_json", &stats_json, py::arg("graph"), py::arg("workers") = 0);
  m.def("distribution_json", &distribution_json, py::arg("graph"), py::arg("stat"), py::arg("workers") = 0);
  m.def("generate", [](const std::string& config) { return generate(generator_config_from_json(json::parse(config))).graph; },
        py::arg("config"));
  m.def("communities_json", [](const Graph& g, std::uint64_t seed) { return to_json(detect_communities(g, seed)).dump(); },
        py::arg("graph"), py::arg("seed") = 0);
  m.def("roles_json", &roles_json, py::arg("graph"), py::arg("k") = py::none(), py::arg("seed") = 0);
  m.def("sample", &sample_graph, py::arg("graph"), py::arg("method"), py::arg("fraction"), py::arg("seed") = 0);
  m.def("layout", [](const Graph& g, std::uint64_t seed, int iterations) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : compute_layout(g, seed, iterations)) out.emplace_back(p.x, p.y);
        return out;
      },
        py::arg("graph"), py::arg("seed") = 0, py::arg("iterations") = kDefaultLayoutIterations);

  py::class_<Repository>(m, "Repository")
      .def(py::init<const std::string&, unsigned>(), py::arg("root"), py::arg("workers") = 0)
      .def("ingest", &Repository::ingest, py::arg("name"), py::arg("payload"), py::arg("collection") = "",
           py::arg("description") = "", py::arg("citation") = "")
      .def("generate", &Repository::generate, py::arg("config"), py::arg("name") = "", py::arg("collection") = "")
      .def("list", &Repository::list)
      .def("get", &Repository::get)
      .def("download", &Repository::download)
      .def("load_graph", &Repository::load_graph)
      .def("query", &Repository::query)
      .def("serve", &Repository::serve, py::arg("host") = "127.0.0.1", py::arg("port") = 0)
      .def("stop", &Repository::stop);
}
