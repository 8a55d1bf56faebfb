#include <doctest.h>

#include <filesystem>

#include "dtgraph/error.hpp"
#include "dtgraph/graph_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dtgraph;

TEST_CASE("graph JSON round trip") {
  const auto g = fixtures::warehouse_abox();
  const auto doc = graph_to_json(g);
  CHECK(doc.at("directed") == false);
  const auto back = graph_from_json(doc);
  CHECK(oracles::same_records(back, g));
  CHECK(graph_to_json(back) == doc);

  const auto path = std::filesystem::temp_directory_path() / "dtgraph_io_test.json";
  write_graph(path, g);
  CHECK(oracles::same_records(read_graph(path), g));
  std::filesystem::remove(path);
}

TEST_CASE("properties keep their types") {
  const Properties props{{"b", true}, {"d", 0.25}, {"s", std::string("x")}};
  const auto doc = properties_to_json(props);
  CHECK(doc.dump() == R"({"b":true,"d":0.25,"s":"x"})");
  CHECK(properties_from_json(doc) == props);
  CHECK_THROWS_AS(properties_from_json(json::parse(R"({"a":[1]})")), Error);
  CHECK_THROWS_AS(properties_from_json(json::parse(R"({"a":null})")), Error);
}

TEST_CASE("malformed graph documents") {
  CHECK_THROWS_AS(graph_from_json(json::array()), Error);
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"nodes":{},"edges":[]})")), Error);
  const auto dangling = json::parse(R"({"directed":false,"nodes":[],
    "edges":[{"id":"e","src":"a","dst":"b","rel":"r","tier":1}]})");
  try {
    graph_from_json(dangling);
    FAIL("expected Integrity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Integrity);
  }
  const auto bad_tier = json::parse(R"({"directed":false,"edges":[],
    "nodes":[{"id":"a","name":"a","type":"T","tier":9,"props":{},"prov":[]}]})");
  CHECK_THROWS_AS(graph_from_json(bad_tier), Error);
}

TEST_CASE("file errors") {
  try {
    read_json_file("/nonexistent/dir/x.json");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  const auto path = std::filesystem::temp_directory_path() / "dtgraph_bad.json";
  write_text_file(path, "{ not json");
  try {
    read_json_file(path);
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
  std::filesystem::remove(path);
}

TEST_CASE("graphml and dot") {
  PropertyGraph g;
  g.add_node(Node{"a", "A<1>", "T", Tier::DomainInternal});
  g.add_node(Node{"b", "say \"b\"", "T", Tier::InterDomain});
  g.add_edge("a", "b", "r", Tier::InterDomain);
  const auto xml = to_graphml(g);
  CHECK(xml.find("edgedefault=\"undirected\"") != std::string::npos);
  CHECK(xml.find("A&lt;1&gt;") != std::string::npos);
  const auto dot = to_dot(g, {{"b", "red"}});
  CHECK(dot.rfind("graph G {", 0) == 0);
  CHECK(dot.find("\"a\" -- \"b\"") != std::string::npos);
  CHECK(dot.find(std::string("fillcolor=\"") + std::string(tier_color(Tier::DomainInternal)) + "\"") !=
        std::string::npos);
  CHECK(dot.find("fillcolor=\"red\"") != std::string::npos);
  CHECK(dot.find("say \\\"b\\\"") != std::string::npos);
  CHECK(to_dot(PropertyGraph(true)).rfind("digraph", 0) == 0);
}
