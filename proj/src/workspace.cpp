#include "netrepo/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "netrepo/query.hpp"
#include "netrepo/service_error.hpp"

namespace netrepo {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json to_json(const WorkspaceItem& item) {
  ordered_json j;
  j["id"] = item.id;
  j["kind"] = item.kind;
  j["payload"] = item.payload;
  return j;
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

bool Workspace::valid_key(std::string_view key) {
  if (key.empty() || key.size() > 128) return false;
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

bool Workspace::valid_kind(std::string_view kind) {
  return kind == "query" || kind == "graph" || kind == "preference";
}

Workspace::Document Workspace::load(std::string_view key) const {
  Document doc;
  const auto path = root_ / (std::string(key) + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return doc;
  std::stringstream ss;
  ss << in.rdbuf();
  const auto j = ordered_json::parse(ss.str());
  doc.next_id = j.at("next_id").get<std::uint64_t>();
  for (const auto& item : j.at("items")) {
    doc.items.push_back({item.at("id").get<std::uint64_t>(), item.at("kind").get<std::string>(), item.at("payload")});
  }
  return doc;
}

void Workspace::store(std::string_view key, const Document& doc) const {
  ordered_json j;
  j["next_id"] = doc.next_id;
  j["items"] = ordered_json::array();
  for (const auto& item : doc.items) j["items"].push_back(to_json(item));
  const auto path = root_ / (std::string(key) + ".json");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump();
    if (!out) throw std::runtime_error("cannot write workspace " + std::string(key));
  }
  fs::rename(tmp, path);
}

WorkspaceItem Workspace::save(std::string_view key, std::string_view kind, ordered_json payload) {
  if (!valid_key(key)) throw ServiceError(400, "invalid workspace key");
  if (!valid_kind(kind)) throw ServiceError(400, "item kind must be query, graph or preference");
  if (kind == "query") {
    try {
      filter_query_from_json(nlohmann::json::parse(payload.dump()));
    } catch (const std::exception& e) {
      throw ServiceError(400, std::string("query payload: ") + e.what());
    }
  }
  std::lock_guard lock(mutex_);
  auto doc = load(key);
  WorkspaceItem item{doc.next_id++, std::string(kind), std::move(payload)};
  doc.items.push_back(item);
  store(key, doc);
  return item;
}

std::vector<WorkspaceItem> Workspace::list(std::string_view key) const {
  if (!valid_key(key)) throw ServiceError(400, "invalid workspace key");
  std::lock_guard lock(mutex_);
  return load(key).items;
}

void Workspace::remove(std::string_view key, std::uint64_t item_id) {
  if (!valid_key(key)) throw ServiceError(400, "invalid workspace key");
  std::lock_guard lock(mutex_);
  auto doc = load(key);
  auto it = std::find_if(doc.items.begin(), doc.items.end(), [&](const auto& i) { return i.id == item_id; });
  if (it == doc.items.end()) throw ServiceError(404, "no item " + std::to_string(item_id) + " in workspace");
  doc.items.erase(it);
  store(key, doc);
}

}  // namespace netrepo
