#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "netrepo/catalog.hpp"
#include "netrepo/workspace.hpp"

namespace netrepo {

struct ServerOptions {
  // Uploads with more edges than this are processed as background jobs.
  std::uint64_t sync_edge_limit = 1'000'000;
  unsigned job_workers = 2;
  std::size_t max_queued_jobs = 64;
};

// HTTP/JSON front end over a Catalog and a Workspace. See docs/api.md.
class Server {
 public:
  Server(Catalog& catalog, Workspace& workspace, ServerOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  // Serves on the bound socket until stop().
  void listen();
  // bind + listen on a background thread; returns the bound port.
  int start(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace netrepo
