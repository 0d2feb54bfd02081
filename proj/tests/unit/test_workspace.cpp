#include "doctest.h"

#include "netrepo/service_error.hpp"
#include "netrepo/workspace.hpp"
#include "temp_dir.hpp"

using namespace netrepo;
using nlohmann::ordered_json;

TEST_CASE("saved payloads come back byte-identical") {
  TempDir dir;
  Workspace ws(dir.path());
  const auto payload = ordered_json::parse(R"({"predicates":[{"stat":"n","min":10}],"fields":["n","m"],"zeta":1})");
  const auto item = ws.save("alice", "query", payload);
  CHECK(item.id == 1);
  const auto items = ws.list("alice");
  REQUIRE(items.size() == 1);
  CHECK(items[0].payload.dump() == payload.dump());
  CHECK(items[0].kind == "query");
  CHECK(Workspace(dir.path()).list("alice")[0].payload.dump() == payload.dump());
}

TEST_CASE("delete removes one item; unknown ids are 404") {
  TempDir dir;
  Workspace ws(dir.path());
  const auto a = ws.save("k", "preference", ordered_json{{"color_by", "community"}});
  const auto b = ws.save("k", "graph", ordered_json{{"id", "karate"}});
  ws.remove("k", a.id);
  const auto left = ws.list("k");
  REQUIRE(left.size() == 1);
  CHECK(left[0].id == b.id);
  try {
    ws.remove("k", a.id);
    FAIL("expected 404");
  } catch (const ServiceError& e) {
    CHECK(e.status() == 404);
  }
  CHECK_THROWS_AS(ws.remove("other", 1), ServiceError);
  // ids are not reused
  CHECK(ws.save("k", "graph", ordered_json::object()).id == 3);
}

TEST_CASE("100 items list in insertion order") {
  TempDir dir;
  Workspace ws(dir.path());
  for (int i = 0; i < 100; ++i) ws.save("bulk", "preference", ordered_json{{"i", i}});
  const auto items = ws.list("bulk");
  REQUIRE(items.size() == 100);
  for (int i = 0; i < 100; ++i) CHECK(items[static_cast<std::size_t>(i)].payload.at("i") == i);
}

TEST_CASE("keys and kinds are validated") {
  TempDir dir;
  Workspace ws(dir.path());
  CHECK(ws.list("never-used").empty());
  CHECK(Workspace::valid_key("abc_DEF-123"));
  CHECK_FALSE(Workspace::valid_key(""));
  CHECK_FALSE(Workspace::valid_key("../etc"));
  CHECK_FALSE(Workspace::valid_key(std::string(129, 'a')));
  CHECK_THROWS_AS(ws.save("../x", "query", ordered_json::object()), ServiceError);
  CHECK_THROWS_AS(ws.save("k", "bookmark", ordered_json::object()), ServiceError);
  CHECK_THROWS_AS(ws.save("k", "query", ordered_json::parse(R"({"predicates":[{"stat":"n","min":5,"max":1}]})")),
                  ServiceError);
  CHECK(ws.list("k").empty());
}
