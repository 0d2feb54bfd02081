#include "netrepo/server.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#define CPPHTTPLIB_LISTEN_BACKLOG 256
#include "httplib.h"

#include "netrepo/query.hpp"
#include "netrepo/serialize.hpp"

namespace netrepo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, {{"error", message}}, status);
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(400, std::string("malformed JSON: ") + e.what());
  }
}

std::uint64_t uint_param(const httplib::Request& req, const std::string& name, std::uint64_t fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string value = req.get_param_value(name);
  try {
    std::size_t used = 0;
    if (value.empty() || value[0] == '-') throw std::invalid_argument(value);
    const auto v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ServiceError(400, name + " must be a non-negative integer");
  }
}

VizLabels labels_param(const httplib::Request& req) {
  if (!req.has_param("labels")) return VizLabels::none;
  const auto v = req.get_param_value("labels");
  if (v.empty() || v == "none") return VizLabels::none;
  if (v == "community") return VizLabels::community;
  if (v == "role") return VizLabels::role;
  throw ServiceError(400, "labels must be community or role");
}

std::string text_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return "";
  if (!j.at(key).is_string()) throw ServiceError(400, std::string(key) + " must be a string");
  return j.at(key).get<std::string>();
}

// Node-scope tables key rows by decimal node id; clients get integers.
json node_ids(const std::vector<std::string>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(std::stoull(id));
  return out;
}

struct Job {
  std::string status = "queued";  // queued | processing | done | failed
  json record;
  std::string error;
};

}  // namespace

struct Server::Impl {
  Impl(Catalog& c, Workspace& w, ServerOptions o) : catalog(c), workspace(w), options(o) {
    for (unsigned i = 0; i < std::max(1u, options.job_workers); ++i) {
      workers.emplace_back([this](std::stop_token st) { work(st); });
    }
    routes();
  }

  ~Impl() {
    http.stop();
    if (listener.joinable()) listener.join();
    {
      std::lock_guard lock(queue_mutex);
      stopping = true;
    }
    queue_cv.notify_all();
    workers.clear();
  }

  Catalog& catalog;
  Workspace& workspace;
  ServerOptions options;
  httplib::Server http;
  std::thread listener;

  std::mutex queue_mutex;
  std::condition_variable queue_cv;
  std::deque<std::function<void()>> queue;
  bool stopping = false;
  std::vector<std::jthread> workers;

  std::mutex jobs_mutex;
  std::map<std::string, Job> jobs;
  std::uint64_t next_job = 1;

  void work(std::stop_token) {
    for (;;) {
      std::function<void()> task;
      {
        std::unique_lock lock(queue_mutex);
        queue_cv.wait(lock, [&] { return stopping || !queue.empty(); });
        if (stopping) return;
        task = std::move(queue.front());
        queue.pop_front();
      }
      task();
    }
  }

  void set_job(const std::string& id, auto&& update) {
    std::lock_guard lock(jobs_mutex);
    update(jobs[id]);
  }

  std::string enqueue(std::function<DatasetRecord()> fn) {
    std::string id;
    {
      std::lock_guard lock(jobs_mutex);
      id = "job-" + std::to_string(next_job++);
      jobs[id];
    }
    {
      std::lock_guard lock(queue_mutex);
      if (queue.size() >= options.max_queued_jobs) {
        std::lock_guard jl(jobs_mutex);
        jobs.erase(id);
        throw ServiceError(503, "job queue is full");
      }
      queue.push_back([this, id, fn = std::move(fn)] {
        set_job(id, [](Job& j) { j.status = "processing"; });
        try {
          auto record = to_json(fn());
          set_job(id, [&](Job& j) {
            j.status = "done";
            j.record = std::move(record);
          });
        } catch (const std::exception& e) {
          set_job(id, [&](Job& j) {
            j.status = "failed";
            j.error = e.what();
          });
        }
      });
    }
    queue_cv.notify_one();
    return id;
  }

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  static Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const ServiceError& e) {
        send_error(res, e.status(), e.what());
      } catch (const InvalidConfig& e) {
        send_json(res, {{"error", e.what()}, {"violations", e.violations()}}, 400);
      } catch (const QueryError& e) {
        send_error(res, 400, e.what());
      } catch (const json::exception& e) {
        send_error(res, 400, e.what());
      } catch (const std::invalid_argument& e) {
        send_error(res, 400, e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      }
    };
  }

  PointTable scope_table(const json& body, std::string* graph_id) {
    if (!body.contains("scope") || body.at("scope") == "graphs") return catalog.graph_table();
    const auto& scope = body.at("scope");
    if (!scope.is_object() || !scope.contains("graph") || !scope.at("graph").is_string()) {
      throw ServiceError(400, "scope must be \"graphs\" or {\"graph\": id}");
    }
    *graph_id = catalog.get(scope.at("graph").get<std::string>()).id;
    return Catalog::node_table(catalog.load_node_stats(*graph_id));
  }

  json ingest_or_queue(IngestRequest request, int* status) {
    const std::string collection = request.collection.empty() ? "misc" : request.collection;
    if (auto known = catalog.collections(); std::find(known.begin(), known.end(), collection) == known.end()) {
      throw ServiceError(400, "unknown collection '" + collection + "'");
    }
    auto labels = std::make_shared<std::vector<std::string>>();
    auto built = std::make_shared<BuiltGraph>(Catalog::parse_payload(request.payload, labels.get()));
    auto run = [this, request, collection, labels, built] {
      json extra = {{"normalization", to_json(built->report)}};
      auto processed = catalog.process(std::move(built->graph), std::move(*labels));
      return catalog.publish(std::move(processed), request.name, collection, DatasetSource::uploaded,
                             request.description, request.citation, std::move(extra));
    };
    if (built->graph.num_edges() <= options.sync_edge_limit) {
      *status = 201;
      return to_json(run());
    }
    const auto id = enqueue(run);
    *status = 202;
    return {{"job", id}, {"status", "queued"}, {"url", "/jobs/" + id}};
  }

  void routes() {
    http.Get("/collections", guarded([this](const auto&, auto& res) { send_json(res, catalog.collections()); }));

    http.Get("/graphs", guarded([this](const auto&, auto& res) {
               json out = json::array();
               for (const auto& r : catalog.list()) out.push_back(to_json(r));
               send_json(res, {{"graphs", out}});
             }));

    http.Get(R"(/graphs/([^/]+))", guarded([this](const auto& req, auto& res) {
               send_json(res, to_json(catalog.get(req.matches[1].str())));
             }));

    http.Get(R"(/graphs/([^/]+)/download)", guarded([this](const auto& req, auto& res) {
               const auto record = catalog.get(req.matches[1].str());
               res.set_header("Content-Disposition", "attachment; filename=\"" + record.id + ".edges\"");
               res.set_content(catalog.load_dump(record.id), "text/plain");
             }));

    http.Get(R"(/graphs/([^/]+)/nodes)", guarded([this](const auto& req, auto& res) {
               const auto record = catalog.get(req.matches[1].str());
               std::multimap<std::string, std::string> params(req.params.begin(), req.params.end());
               const auto query = filter_query_from_params(params);
               const auto table = Catalog::node_table(catalog.load_node_stats(record.id));
               const auto result = run_query(table, query);
               json out = to_json(result, table);
               out["ids"] = node_ids(table.ids);
               out["matches"] = node_ids(result.matches);
               out["graph"] = record.id;
               const auto labels = catalog.load_labels(record.id);
               json names = json::array();
               for (auto row : result.match_rows) names.push_back(labels.at(row));
               out["match_labels"] = std::move(names);
               send_json(res, out);
             }));

    http.Get(R"(/graphs/([^/]+)/distribution/([^/]+))", guarded([this](const auto& req, auto& res) {
               const auto record = catalog.get(req.matches[1].str());
               const auto table = catalog.load_node_stats(record.id);
               json out = to_json(distribution(table, req.matches[2].str()));
               out["graph"] = record.id;
               send_json(res, out);
             }));

    http.Get(R"(/graphs/([^/]+)/viz)", guarded([this](const auto& req, auto& res) {
               const auto max_nodes = uint_param(req, "max_nodes", catalog.options().viz_nodes);
               if (max_nodes == 0 || max_nodes > UINT32_MAX) throw ServiceError(400, "max_nodes out of range");
               const auto seed = uint_param(req, "seed", kDefaultVizSeed);
               send_json(res, catalog.visualization(req.matches[1].str(), static_cast<std::uint32_t>(max_nodes),
                                                    labels_param(req), seed));
             }));

    http.Post(R"(/graphs/([^/]+)/notes)", guarded([this](const auto& req, auto& res) {
                const auto body = parse_body(req);
                send_json(res, to_json(catalog.add_note(req.matches[1].str(), text_field(body, "note"))));
              }));

    http.Post(R"(/graphs/([^/]+)/rename)", guarded([this](const auto& req, auto& res) {
                const auto body = parse_body(req);
                send_json(res, to_json(catalog.rename(req.matches[1].str(), text_field(body, "name"))));
              }));

    http.Post("/graphs", guarded([this](const auto& req, auto& res) {
                IngestRequest request;
                auto field = [&](const char* name) -> std::string {
                  if (req.is_multipart_form_data() && req.has_file(name)) return req.get_file_value(name).content;
                  return req.has_param(name) ? req.get_param_value(name) : "";
                };
                if (req.is_multipart_form_data()) {
                  if (!req.has_file("file")) throw ServiceError(400, "multipart upload needs a \"file\" part");
                  const auto& file = req.get_file_value("file");
                  request.payload = file.content;
                  request.name = field("name");
                  if (request.name.empty()) request.name = file.filename;
                } else {
                  request.payload = req.body;
                  request.name = field("name");
                }
                request.collection = field("collection");
                request.description = field("description");
                request.citation = field("citation");
                int status = 201;
                auto out = ingest_or_queue(std::move(request), &status);
                send_json(res, out, status);
              }));

    http.Get(R"(/jobs/([^/]+))", guarded([this](const auto& req, auto& res) {
               const std::string id = req.matches[1].str();
               std::lock_guard lock(jobs_mutex);
               auto it = jobs.find(id);
               if (it == jobs.end()) throw ServiceError(404, "unknown job '" + id + "'");
               json out = {{"id", id}, {"status", it->second.status}};
               if (it->second.status == "done") out["record"] = it->second.record;
               if (it->second.status == "failed") out["error"] = it->second.error;
               send_json(res, out);
             }));

    http.Post("/generate", guarded([this](const auto& req, auto& res) {
                const auto body = parse_body(req);
                if (!body.is_object()) throw ServiceError(400, "request must be a JSON object");
                const json& config_json = body.contains("config") ? body.at("config") : body;
                const auto config = generator_config_from_json(config_json);
                const bool preview = body.value("preview", false);
                if (!preview) {
                  const auto record = catalog.generate(config, text_field(body, "name"), text_field(body, "collection"));
                  send_json(res, to_json(record), 201);
                  return;
                }
                auto result = generate(config);
                const auto stats = compute_all(result.graph, catalog.options().workers);
                json out = {{"preview", true},
                            {"config", to_json(config)},
                            {"stats", to_json(stats.graph)},
                            {"warnings", result.warnings},
                            {"block_edges", Catalog::block_readout(config, result.graph)}};
                const auto max_nodes = uint_param(req, "max_nodes", catalog.options().viz_nodes);
                if (max_nodes == 0) throw ServiceError(400, "max_nodes must be >= 1");
                out["viz"] = catalog.build_visualization(result.graph, static_cast<std::uint32_t>(max_nodes),
                                                         uint_param(req, "seed", kDefaultVizSeed), labels_param(req));
                send_json(res, out);
              }));

    http.Post("/query", guarded([this](const auto& req, auto& res) {
                const auto body = parse_body(req);
                const auto query = filter_query_from_json(body);
                std::string graph_id;
                const auto table = scope_table(body, &graph_id);
                const auto result = run_query(table, query);
                json out = to_json(result, table);
                if (!graph_id.empty()) {
                  out["ids"] = node_ids(table.ids);
                  out["matches"] = node_ids(result.matches);
                  out["graph"] = graph_id;
                }
                send_json(res, out);
              }));

    http.Post("/drill", guarded([this](const auto& req, auto& res) {
                const auto body = parse_body(req);
                const auto request = drill_request_from_json(body);
                std::string graph_id;
                const auto table = scope_table(body, &graph_id);
                send_json(res, to_json(drill(table, request)));
              }));

    http.Get(R"(/workspace/([^/]+)/items)", guarded([this](const auto& req, auto& res) {
               ordered_json items = ordered_json::array();
               for (const auto& item : workspace.list(req.matches[1].str())) items.push_back(to_json(item));
               ordered_json out;
               out["items"] = std::move(items);
               res.set_content(out.dump(), kJson);
             }));

    http.Post(R"(/workspace/([^/]+)/items)", guarded([this](const auto& req, auto& res) {
                ordered_json body;
                try {
                  body = ordered_json::parse(req.body);
                } catch (const ordered_json::parse_error& e) {
                  throw ServiceError(400, std::string("malformed JSON: ") + e.what());
                }
                if (!body.is_object() || !body.contains("kind") || !body.at("kind").is_string() ||
                    !body.contains("payload")) {
                  throw ServiceError(400, "item needs \"kind\" and \"payload\"");
                }
                const auto item = workspace.save(req.matches[1].str(), body.at("kind").get<std::string>(),
                                                 body.at("payload"));
                res.status = 201;
                res.set_content(to_json(item).dump(), kJson);
              }));

    http.Delete(R"(/workspace/([^/]+)/items/([^/]+))", guarded([this](const auto& req, auto& res) {
                  std::uint64_t id = 0;
                  try {
                    std::size_t used = 0;
                    id = std::stoull(req.matches[2].str(), &used);
                    if (used != req.matches[2].str().size()) throw std::invalid_argument("id");
                  } catch (const std::exception&) {
                    throw ServiceError(404, "no item " + req.matches[2].str() + " in workspace");
                  }
                  workspace.remove(req.matches[1].str(), id);
                  res.status = 204;
                }));
  }
};

Server::Server(Catalog& catalog, Workspace& workspace, ServerOptions options)
    : impl_(std::make_unique<Impl>(catalog, workspace, options)) {}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->http.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->http.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

int Server::start(const std::string& host, int port) {
  const int bound = bind(host, port);
  impl_->listener = std::thread([this] { listen(); });
  impl_->http.wait_until_ready();
  return bound;
}

void Server::stop() {
  impl_->http.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
}

}  // namespace netrepo
