#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace netrepo {

struct Predicate {
  std::string stat;
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();

  // Inclusive on both ends; an undefined value never matches.
  bool holds(std::optional<double> value) const { return value && *value >= min && *value <= max; }
};

// Conjunction of range predicates plus the statistics to return for plotting.
struct FilterQuery {
  std::vector<Predicate> predicates;
  std::vector<std::string> fields;
  std::vector<std::pair<std::string, std::string>> pairs;
};

// Entities (graphs of a catalog, or nodes of one graph) with named columns.
// A missing value (undefined statistic) is nullopt.
struct PointTable {
  std::vector<std::string> ids;
  std::map<std::string, std::vector<std::optional<double>>, std::less<>> columns;

  bool has_column(std::string_view name) const { return columns.find(name) != columns.end(); }
  const std::vector<std::optional<double>>& column(std::string_view name) const;
};

class QueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses {"predicates": [{"stat", "min"?, "max"?}], "fields"?: [...],
// "pairs"?: [[x, y], ...]}. Throws QueryError on malformed input or min > max.
FilterQuery filter_query_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FilterQuery& q);

// Parses "stat.min=" / "stat.max=" query parameters, plus "fields" and
// "columns" as comma-separated lists.
FilterQuery filter_query_from_params(const std::multimap<std::string, std::string>& params);

struct QueryResult {
  std::vector<std::string> matches;     // ids satisfying all predicates, table order
  std::vector<std::size_t> match_rows;  // row indices of the matches
  // Requested columns over ALL rows, so every point can be drawn.
  std::map<std::string, std::vector<std::optional<double>>, std::less<>> columns;
  struct Series {
    std::string x, y;
    std::vector<std::pair<std::optional<double>, std::optional<double>>> points;
  };
  std::vector<Series> series;
};

// Throws QueryError for a statistic the table does not carry.
QueryResult run_query(const PointTable& table, const FilterQuery& q);
nlohmann::json to_json(const QueryResult& r, const PointTable& table);

struct DrillRequest {
  std::vector<std::string> stats;
  // Allowed values per drilled statistic beyond the first; unlisted ones are
  // unrestricted.
  std::map<std::string, std::vector<double>, std::less<>> values;
};

struct DrillColumn {
  std::string stat;
  std::vector<std::pair<double, double>> points;  // (x, value)
};

struct DrillResult {
  std::string x;
  std::vector<DrillColumn> columns;
};

// The first statistic is the shared x-axis. A single statistic yields one
// column of (x, count) pairs over distinct x values; otherwise every further
// statistic yields a column of (x, value) for each row passing the value
// filters, in table order. Rows with an undefined x or value are skipped.
DrillResult drill(const PointTable& table, const DrillRequest& request);
DrillRequest drill_request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DrillResult& r);

}  // namespace netrepo
