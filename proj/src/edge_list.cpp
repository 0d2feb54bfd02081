#include "netrepo/edge_list.hpp"

#include <charconv>
#include <limits>
#include <unordered_map>

namespace netrepo {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

double parse_real(std::string_view tok, std::size_t line, const char* what) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

// "#nodes N" with optional whitespace after '#'.
std::optional<std::uint64_t> node_count_header(std::string_view line) {
  if (line.empty() || line.front() != '#') return std::nullopt;
  auto tokens = split_ws(line.substr(1));
  if (tokens.size() != 2 || tokens[0] != "nodes") return std::nullopt;
  return parse_uint(tokens[1]);
}

}  // namespace

EdgeListFile parse_edge_list(std::string_view text) {
  EdgeListFile out;
  std::unordered_map<std::string, NodeId> ids;
  bool matrix_market = false;
  bool dimension_row_pending = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto intern = [&](std::string_view label, std::size_t line) -> NodeId {
    if (out.declared_nodes) {
      auto id = parse_uint(label);
      if (!id) throw ParseError(line, "label '" + std::string(label) + "' is not an integer id");
      if (*id >= *out.declared_nodes) {
        throw ParseError(line, "node id " + std::string(label) + " exceeds declared node count " +
                                   std::to_string(*out.declared_nodes));
      }
      return static_cast<NodeId>(*id);
    }
    auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<NodeId>(out.labels.size()));
    if (inserted) {
      if (out.labels.size() >= std::numeric_limits<NodeId>::max()) {
        throw ParseError(line, "too many distinct nodes");
      }
      out.labels.emplace_back(label);
    }
    return it->second;
  };

  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    line.remove_prefix(first);

    if (line.front() == '%' || line.front() == '#') {
      if (line.starts_with("%%MatrixMarket")) {
        matrix_market = true;
        dimension_row_pending = true;
      } else if (auto n = node_count_header(line); n && out.edges.empty() && !out.declared_nodes) {
        if (*n > std::numeric_limits<NodeId>::max()) throw ParseError(line_no, "node count too large");
        out.declared_nodes = static_cast<NodeId>(*n);
      }
      out.comments.emplace_back(line);
      if (end == text.size()) break;
      continue;
    }

    auto tokens = split_ws(line);
    if (matrix_market && dimension_row_pending) {
      dimension_row_pending = false;
      if (end == text.size()) break;
      continue;
    }
    if (tokens.size() < 2) throw ParseError(line_no, "expected at least 2 columns, found 1");
    if (tokens.size() > 4) {
      throw ParseError(line_no, "expected at most 4 columns, found " + std::to_string(tokens.size()));
    }
    EdgeRow row;
    row.u = intern(tokens[0], line_no);
    row.v = intern(tokens[1], line_no);
    if (tokens.size() >= 3) row.weight = parse_real(tokens[2], line_no, "weight");
    if (tokens.size() >= 4) row.timestamp = parse_real(tokens[3], line_no, "timestamp");
    out.edges.push_back(row);
    if (end == text.size()) break;
  }

  if (out.declared_nodes) {
    out.labels.clear();
    out.labels.reserve(*out.declared_nodes);
    for (NodeId i = 0; i < *out.declared_nodes; ++i) out.labels.push_back(std::to_string(i));
  }
  return out;
}

BuiltGraph build_graph(const EdgeListFile& raw) {
  std::vector<Edge> edges;
  edges.reserve(raw.edges.size());
  for (const auto& row : raw.edges) edges.emplace_back(row.u, row.v);
  NodeId n = raw.declared_nodes ? *raw.declared_nodes : static_cast<NodeId>(raw.labels.size());
  BuiltGraph out;
  out.graph = Graph::from_edges(n, edges, &out.report);
  return out;
}

}  // namespace netrepo
