#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netrepo/graph.hpp"

namespace netrepo {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct EdgeRow {
  NodeId u = 0;
  NodeId v = 0;
  std::optional<double> weight;
  std::optional<double> timestamp;
};

// Parsed edge list. Labels are mapped to dense ids in first-seen order, so
// labels[id] is the original token. When the input carries a "#nodes N"
// header (the canonical dump), integer labels are taken verbatim as ids and
// labels becomes "0".."N-1".
struct EdgeListFile {
  std::vector<EdgeRow> edges;
  std::vector<std::string> labels;
  std::vector<std::string> comments;
  std::optional<NodeId> declared_nodes;

  std::size_t num_labels() const { return labels.size(); }
};

EdgeListFile parse_edge_list(std::string_view text);

struct BuiltGraph {
  Graph graph;
  NormalizationReport report;
};

BuiltGraph build_graph(const EdgeListFile& raw);

}  // namespace netrepo
