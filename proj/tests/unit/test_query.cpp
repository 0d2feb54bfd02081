#include "doctest.h"

#include <random>

#include "netrepo/query.hpp"

using namespace netrepo;
using nlohmann::json;

namespace {

PointTable sample_table() {
  PointTable t;
  t.ids = {"a", "b", "c", "d"};
  t.columns["global_clustering"] = {0.1, 0.6, 0.9, std::nullopt};
  t.columns["n"] = {10, 20, 30, 40};
  t.columns["max_kcore"] = {2, 3, 3, 4};
  return t;
}

// Row-by-row evaluation with no shared state.
std::vector<std::string> brute_force(const PointTable& t, const FilterQuery& q) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < t.ids.size(); ++r) {
    bool ok = true;
    for (const auto& p : q.predicates) {
      const auto v = t.columns.find(p.stat)->second[r];
      if (!v || *v < p.min || *v > p.max) ok = false;
    }
    if (ok) out.push_back(t.ids[r]);
  }
  return out;
}

}  // namespace

TEST_CASE("range predicates are inclusive and skip undefined values") {
  const auto t = sample_table();
  const auto q = filter_query_from_json(json::parse(R"({"predicates":[{"stat":"kappa","min":0.6}]})"));
  CHECK(run_query(t, q).matches == std::vector<std::string>{"b", "c"});
  const auto r = run_query(t, filter_query_from_json(json::parse(R"({"predicates":[{"stat":"n","max":10}]})")));
  CHECK(r.matches == std::vector<std::string>{"a"});
  CHECK(r.match_rows == std::vector<std::size_t>{0});
}

TEST_CASE("no predicates match everything; conjunction narrows") {
  const auto t = sample_table();
  CHECK(run_query(t, FilterQuery{}).matches.size() == 4);
  const auto q = filter_query_from_json(json::parse(
      R"({"predicates":[{"stat":"max_kcore","min":3,"max":3},{"stat":"n","min":25}]})"));
  CHECK(run_query(t, q).matches == std::vector<std::string>{"c"});
}

TEST_CASE("fields and pairs cover every row") {
  const auto t = sample_table();
  const auto q = filter_query_from_json(json::parse(
      R"({"predicates":[{"stat":"n","min":35}],"fields":["n"],"pairs":[["n","kappa"]]})"));
  const auto r = run_query(t, q);
  CHECK(r.matches == std::vector<std::string>{"d"});
  CHECK(r.columns.at("n").size() == 4);
  REQUIRE(r.series.size() == 1);
  CHECK(r.series[0].y == "global_clustering");
  CHECK(r.series[0].points.size() == 4);
  const auto j = to_json(r, t);
  CHECK(j.at("ids").size() == 4);
  CHECK(j.at("series")[0].at("points")[3][1].is_null());
}

TEST_CASE("malformed queries are rejected") {
  const auto t = sample_table();
  CHECK_THROWS_AS(filter_query_from_json(json::parse(R"({"predicates":[{"stat":"n","min":5,"max":1}]})")), QueryError);
  CHECK_THROWS_AS(filter_query_from_json(json::parse(R"({"predicates":[{"min":1}]})")), QueryError);
  CHECK_THROWS_AS(filter_query_from_json(json::parse(R"({"predicates":[{"stat":"n","min":"x"}]})")), QueryError);
  CHECK_THROWS_AS(filter_query_from_json(json::parse("[]")), QueryError);
  CHECK_THROWS_AS(run_query(t, filter_query_from_json(json::parse(R"({"fields":["pagerank"]})"))), QueryError);
}

TEST_CASE("query-string predicates") {
  const std::multimap<std::string, std::string> params{
      {"degree.min", "2"}, {"degree.max", "5"}, {"kcore.min", "1"}, {"fields", "degree,kcore"}, {"seed", "x"}};
  const auto q = filter_query_from_params(params);
  REQUIRE(q.predicates.size() == 2);
  CHECK(q.predicates[0].stat == "degree");
  CHECK(q.predicates[0].min == 2);
  CHECK(q.predicates[0].max == 5);
  CHECK(q.fields == std::vector<std::string>{"degree", "kcore"});
  CHECK_THROWS_AS(filter_query_from_params({{"degree.min", "two"}}), QueryError);
  CHECK_THROWS_AS(filter_query_from_params({{"degree.min", "5"}, {"degree.max", "1"}}), QueryError);
}

TEST_CASE("query json round-trips") {
  const auto q = filter_query_from_json(
      json::parse(R"({"predicates":[{"stat":"n","min":1},{"stat":"m"}],"fields":["n"],"pairs":[["n","m"]]})"));
  const auto back = filter_query_from_json(to_json(q));
  CHECK(to_json(back) == to_json(q));
  CHECK(back.predicates[1].min == -std::numeric_limits<double>::infinity());
}

TEST_CASE("random predicates agree with row-by-row evaluation") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  PointTable t;
  for (int r = 0; r < 200; ++r) {
    t.ids.push_back("g" + std::to_string(r));
    t.columns["x"].push_back(u(rng) < 0.1 ? std::nullopt : std::optional<double>(u(rng)));
    t.columns["y"].push_back(std::floor(u(rng) * 10));
  }
  for (int trial = 0; trial < 100; ++trial) {
    FilterQuery q;
    double a = u(rng), b = u(rng);
    q.predicates.push_back({"x", std::min(a, b), std::max(a, b)});
    if (trial % 2) q.predicates.push_back({"y", std::floor(u(rng) * 10), 9});
    CHECK(run_query(t, q).matches == brute_force(t, q));
  }
}

TEST_CASE("drill down") {
  const auto t = sample_table();
  const auto counts = drill(t, drill_request_from_json(json::parse(R"({"stats":["max_kcore"]})")));
  REQUIRE(counts.columns.size() == 1);
  CHECK(counts.columns[0].points == std::vector<std::pair<double, double>>{{2, 1}, {3, 2}, {4, 1}});

  const auto filtered = drill(t, drill_request_from_json(
                                     json::parse(R"({"stats":["n","max_kcore"],"values":{"max_kcore":[3]}})")));
  CHECK(filtered.x == "n");
  CHECK(filtered.columns[0].points == std::vector<std::pair<double, double>>{{20, 3}, {30, 3}});

  const auto skip = drill(t, drill_request_from_json(json::parse(R"({"stats":["n","kappa"]})")));
  CHECK(skip.columns[0].points.size() == 3);
  CHECK(to_json(skip).at("columns")[0].at("stat") == "global_clustering");
  CHECK_THROWS_AS(drill_request_from_json(json::parse(R"({"stats":[]})")), QueryError);
  CHECK_THROWS_AS(drill(t, drill_request_from_json(json::parse(R"({"stats":["betweenness"]})"))), QueryError);
}
