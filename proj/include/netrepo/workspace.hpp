#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace netrepo {

// Saved query, generated graph, or visualization preference. Payloads keep
// their key order so they serialize back byte-identically.
struct WorkspaceItem {
  std::uint64_t id = 0;
  std::string kind;
  nlohmann::ordered_json payload;
};

nlohmann::ordered_json to_json(const WorkspaceItem& item);

// Per-key item lists persisted as <root>/<key>.json. Keys are opaque
// strings of [A-Za-z0-9_-], at most 128 characters; there is no
// authentication.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  static bool valid_key(std::string_view key);
  static bool valid_kind(std::string_view kind);

  // Throws ServiceError 400 for a bad key/kind or a payload that does not
  // parse as its kind ("query" payloads must be filter queries).
  WorkspaceItem save(std::string_view key, std::string_view kind, nlohmann::ordered_json payload);
  // Unknown key: empty list. Items come back in insertion order.
  std::vector<WorkspaceItem> list(std::string_view key) const;
  // ServiceError 404 when the item does not exist.
  void remove(std::string_view key, std::uint64_t item_id);

 private:
  struct Document {
    std::uint64_t next_id = 1;
    std::vector<WorkspaceItem> items;
  };
  Document load(std::string_view key) const;
  void store(std::string_view key, const Document& doc) const;

  std::filesystem::path root_;
  mutable std::mutex mutex_;
};

}  // namespace netrepo
