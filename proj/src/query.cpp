#include "netrepo/query.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace netrepo {

using nlohmann::json;

namespace {

std::string canonical_stat(std::string name) {
  if (name == "kappa") return "global_clustering";
  return name;
}

double bound_from_json(const json& p, const char* key, double fallback) {
  if (!p.contains(key) || p.at(key).is_null()) return fallback;
  if (!p.at(key).is_number()) throw QueryError(std::string("predicate ") + key + " must be a number");
  return p.at(key).get<double>();
}

json bound_to_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(canonical_stat(item));
  }
  return out;
}

void check_predicates(const FilterQuery& q) {
  for (const auto& p : q.predicates) {
    if (p.stat.empty()) throw QueryError("predicate needs a statistic name");
    if (std::isnan(p.min) || std::isnan(p.max)) throw QueryError("predicate bounds must be numbers");
    if (p.min > p.max) throw QueryError("predicate on " + p.stat + " has min > max");
  }
}

}  // namespace

const std::vector<std::optional<double>>& PointTable::column(std::string_view name) const {
  auto it = columns.find(name);
  if (it == columns.end()) throw QueryError("unknown statistic '" + std::string(name) + "'");
  return it->second;
}

FilterQuery filter_query_from_json(const json& j) {
  if (!j.is_object()) throw QueryError("query must be a JSON object");
  FilterQuery q;
  if (j.contains("predicates")) {
    const auto& preds = j.at("predicates");
    if (!preds.is_array()) throw QueryError("predicates must be an array");
    for (const auto& p : preds) {
      if (!p.is_object()) throw QueryError("each predicate must be an object");
      Predicate pred;
      const char* key = p.contains("stat") ? "stat" : "statistic";
      if (!p.contains(key) || !p.at(key).is_string()) throw QueryError("predicate needs a \"stat\" name");
      pred.stat = canonical_stat(p.at(key).get<std::string>());
      pred.min = bound_from_json(p, "min", pred.min);
      pred.max = bound_from_json(p, "max", pred.max);
      q.predicates.push_back(std::move(pred));
    }
  }
  if (j.contains("fields")) {
    if (!j.at("fields").is_array()) throw QueryError("fields must be an array of names");
    for (const auto& f : j.at("fields")) {
      if (!f.is_string()) throw QueryError("fields must be an array of names");
      q.fields.push_back(canonical_stat(f.get<std::string>()));
    }
  }
  if (j.contains("pairs")) {
    if (!j.at("pairs").is_array()) throw QueryError("pairs must be an array of [x, y]");
    for (const auto& pair : j.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw QueryError("pairs must be an array of [x, y]");
      }
      q.pairs.emplace_back(canonical_stat(pair[0].get<std::string>()), canonical_stat(pair[1].get<std::string>()));
    }
  }
  check_predicates(q);
  return q;
}

json to_json(const FilterQuery& q) {
  json preds = json::array();
  for (const auto& p : q.predicates) {
    preds.push_back({{"stat", p.stat}, {"min", bound_to_json(p.min)}, {"max", bound_to_json(p.max)}});
  }
  json pairs = json::array();
  for (const auto& [x, y] : q.pairs) pairs.push_back({x, y});
  return {{"predicates", preds}, {"fields", q.fields}, {"pairs", pairs}};
}

FilterQuery filter_query_from_params(const std::multimap<std::string, std::string>& params) {
  FilterQuery q;
  std::map<std::string, Predicate> by_stat;
  for (const auto& [key, value] : params) {
    if (key == "fields" || key == "columns") {
      auto names = split_commas(value);
      q.fields.insert(q.fields.end(), names.begin(), names.end());
      continue;
    }
    auto dot = key.rfind('.');
    if (dot == std::string::npos) continue;
    const std::string suffix = key.substr(dot + 1);
    if (suffix != "min" && suffix != "max") continue;
    const std::string stat = canonical_stat(key.substr(0, dot));
    double bound = 0;
    try {
      std::size_t used = 0;
      bound = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw QueryError("bound " + key + " must be a number");
    }
    auto& pred = by_stat[stat];
    pred.stat = stat;
    (suffix == "min" ? pred.min : pred.max) = bound;
  }
  for (auto& [stat, pred] : by_stat) q.predicates.push_back(pred);
  check_predicates(q);
  return q;
}

QueryResult run_query(const PointTable& table, const FilterQuery& q) {
  check_predicates(q);
  std::vector<const std::vector<std::optional<double>>*> cols;
  for (const auto& p : q.predicates) cols.push_back(&table.column(p.stat));
  for (const auto& f : q.fields) table.column(f);
  for (const auto& [x, y] : q.pairs) {
    table.column(x);
    table.column(y);
  }

  QueryResult r;
  for (std::size_t row = 0; row < table.ids.size(); ++row) {
    bool ok = true;
    for (std::size_t i = 0; i < q.predicates.size() && ok; ++i) ok = q.predicates[i].holds((*cols[i])[row]);
    if (ok) {
      r.matches.push_back(table.ids[row]);
      r.match_rows.push_back(row);
    }
  }
  for (const auto& f : q.fields) r.columns.emplace(f, table.column(f));
  for (const auto& [x, y] : q.pairs) {
    QueryResult::Series s{x, y, {}};
    const auto& xs = table.column(x);
    const auto& ys = table.column(y);
    s.points.reserve(xs.size());
    for (std::size_t row = 0; row < xs.size(); ++row) s.points.emplace_back(xs[row], ys[row]);
    r.series.push_back(std::move(s));
  }
  return r;
}

json to_json(const QueryResult& r, const PointTable& table) {
  json columns = json::object();
  for (const auto& [name, values] : r.columns) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(optional_to_json(v));
    columns[name] = std::move(arr);
  }
  json series = json::array();
  for (const auto& s : r.series) {
    json pts = json::array();
    for (const auto& [x, y] : s.points) pts.push_back({optional_to_json(x), optional_to_json(y)});
    series.push_back({{"x", s.x}, {"y", s.y}, {"points", std::move(pts)}});
  }
  return {{"ids", table.ids}, {"matches", r.matches}, {"columns", columns}, {"series", series}};
}

DrillResult drill(const PointTable& table, const DrillRequest& request) {
  if (request.stats.empty()) throw QueryError("drill needs at least one statistic");
  for (const auto& s : request.stats) table.column(s);
  for (const auto& [s, vals] : request.values) table.column(s);

  DrillResult out;
  out.x = request.stats.front();
  const auto& xs = table.column(out.x);

  if (request.stats.size() == 1) {
    std::map<double, double> counts;
    for (const auto& x : xs) {
      if (x) counts[*x] += 1;
    }
    DrillColumn col{out.x, {counts.begin(), counts.end()}};
    out.columns.push_back(std::move(col));
    return out;
  }

  std::vector<bool> keep(table.ids.size(), true);
  for (std::size_t k = 1; k < request.stats.size(); ++k) {
    auto allowed = request.values.find(request.stats[k]);
    if (allowed == request.values.end() || allowed->second.empty()) continue;
    const std::set<double> ok(allowed->second.begin(), allowed->second.end());
    const auto& col = table.column(request.stats[k]);
    for (std::size_t row = 0; row < keep.size(); ++row) {
      if (!col[row] || !ok.contains(*col[row])) keep[row] = false;
    }
  }
  for (std::size_t k = 1; k < request.stats.size(); ++k) {
    DrillColumn col{request.stats[k], {}};
    const auto& vs = table.column(request.stats[k]);
    for (std::size_t row = 0; row < keep.size(); ++row) {
      if (keep[row] && xs[row] && vs[row]) col.points.emplace_back(*xs[row], *vs[row]);
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

DrillRequest drill_request_from_json(const json& j) {
  if (!j.is_object() || !j.contains("stats") || !j.at("stats").is_array()) {
    throw QueryError("drill request needs a \"stats\" array");
  }
  DrillRequest r;
  for (const auto& s : j.at("stats")) {
    if (!s.is_string()) throw QueryError("stats must be names");
    r.stats.push_back(canonical_stat(s.get<std::string>()));
  }
  if (j.contains("values")) {
    if (!j.at("values").is_object()) throw QueryError("values must map statistic names to value lists");
    for (const auto& [name, vals] : j.at("values").items()) {
      if (!vals.is_array()) throw QueryError("values must map statistic names to value lists");
      auto& dst = r.values[canonical_stat(name)];
      for (const auto& v : vals) {
        if (!v.is_number()) throw QueryError("drill values must be numbers");
        dst.push_back(v.get<double>());
      }
    }
  }
  if (r.stats.empty()) throw QueryError("drill needs at least one statistic");
  return r;
}

json to_json(const DrillResult& r) {
  json cols = json::array();
  for (const auto& c : r.columns) {
    json pts = json::array();
    for (const auto& [x, v] : c.points) pts.push_back({x, v});
    cols.push_back({{"stat", c.stat}, {"points", std::move(pts)}});
  }
  return {{"x", r.x}, {"columns", cols}};
}

}  // namespace netrepo
