#include <doctest.h>

#include "dtgraph/error.hpp"
#include "dtgraph/graph.hpp"

using namespace dtgraph;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("tiers") {
  CHECK(tier_from_int(3) == Tier::SystemOfSystems);
  CHECK_THROWS_AS(tier_from_int(0), Error);
  CHECK_THROWS_AS(tier_from_int(5), Error);
  const TierSet s = TierSet::parse("1, 3");
  CHECK(s.contains(Tier::DomainInternal));
  CHECK_FALSE(s.contains(Tier::InterDomain));
  CHECK(s.levels() == std::vector<int>{1, 3});
  CHECK(TierSet::parse(s.to_string()) == s);
  CHECK_THROWS_AS(TierSet::parse("1,x"), Error);
  CHECK(TierSet::all().levels().size() == 4);
}

TEST_CASE("sources") {
  CHECK(source_from_string("io") == Source::Io);
  CHECK(to_string(Source::Position) == "position");
  CHECK_THROWS_AS(source_from_string("scada"), Error);
  SourceSet s{Source::Io};
  s.insert(SourceSet{Source::Plc});
  CHECK(s.list() == std::vector<Source>{Source::Plc, Source::Io});
}

TEST_CASE("nodes and edges") {
  PropertyGraph g;
  const auto a = g.add_node("A", "Drive", Tier::DomainInternal);
  const auto b = g.add_node("B", "Motor", Tier::InterDomain, {{"kw", 1.5}}, {Source::Plc});
  CHECK(a == "n0");
  CHECK(b == "n1");
  CHECK(g.node(b).props.at("kw") == PropertyValue{1.5});
  const auto e = g.add_edge(a, b, "drives", Tier::DomainInternal);
  CHECK(e == "e0");
  CHECK(g.has_edge(b, a, "drives"));  // undirected
  CHECK_FALSE(g.has_edge(a, b, "reads"));
  CHECK(g.incident(0).size() == 1);
  CHECK(g.other_end(0, 0) == 1);

  CHECK(kind_of([&] { g.add_edge(b, a, "drives", Tier::DomainInternal); }) == ErrorKind::DuplicateEdge);
  CHECK(kind_of([&] { g.add_edge(a, "zz", "drives", Tier::DomainInternal); }) == ErrorKind::Integrity);
  CHECK(kind_of([&] { g.add_edge(a, b, "", Tier::DomainInternal); }) == ErrorKind::Validation);
  CHECK(kind_of([&] { g.add_node(Node{"n0", "x", "T"}); }) == ErrorKind::DuplicateId);
  CHECK(kind_of([&] { g.add_node("", "T", Tier::DomainInternal); }) == ErrorKind::Validation);
  CHECK(kind_of([&] { g.node("missing"); }) == ErrorKind::Integrity);
  CHECK(g.find_node("missing") == nullptr);

  // explicit ids do not collide with generated ones
  g.add_node(Node{"n2", "C", "T"});
  CHECK(g.add_node("D", "T", Tier::DomainInternal) == "n3");
}

TEST_CASE("directed and multigraph flags") {
  PropertyGraph d(true);
  d.add_node(Node{"a", "a", "T"});
  d.add_node(Node{"b", "b", "T"});
  d.add_edge("a", "b", "r", Tier::DomainInternal);
  CHECK_NOTHROW(d.add_edge("b", "a", "r", Tier::DomainInternal));
  CHECK_FALSE(d.has_edge("a", "b", "s"));

  PropertyGraph m(false, true);
  m.add_node(Node{"a", "a", "T"});
  m.add_node(Node{"b", "b", "T"});
  m.add_edge("a", "b", "r", Tier::DomainInternal);
  CHECK_NOTHROW(m.add_edge("a", "b", "r", Tier::DomainInternal));
  CHECK(m.edge_count() == 2);
}

TEST_CASE("tier projection keeps ids") {
  PropertyGraph g;
  g.add_node(Node{"a", "a", "T", Tier::DomainInternal});
  g.add_node(Node{"b", "b", "T", Tier::InterDomain});
  g.add_node(Node{"c", "c", "T", Tier::Environment});
  g.add_edge(Edge{"x", "a", "b", "r", Tier::InterDomain});
  g.add_edge(Edge{"y", "b", "c", "r", Tier::InterDomain});
  g.add_edge(Edge{"z", "a", "b", "s", Tier::SystemOfSystems});
  const auto p = project_tiers(g, TierSet{Tier::DomainInternal, Tier::InterDomain});
  CHECK(p.node_count() == 2);
  REQUIRE(p.edge_count() == 1);
  CHECK(p.edges()[0].id == "x");
  CHECK(project_tiers(g, TierSet{}).empty());
}

TEST_CASE("connected components") {
  PropertyGraph g;
  for (const char* id : {"a", "b", "c", "d", "e"}) g.add_node(Node{id, id, "T"});
  g.add_edge("d", "b", "r", Tier::DomainInternal);
  g.add_edge("c", "e", "r", Tier::DomainInternal);
  const auto cc = connected_components(g);
  const std::vector<std::vector<std::string>> expected{{"a"}, {"b", "d"}, {"c", "e"}};
  CHECK(cc == expected);
  CHECK(connected_components(PropertyGraph{}).empty());
}

TEST_CASE("property values print plainly") {
  CHECK(to_string(PropertyValue{true}) == "true");
  CHECK(to_string(PropertyValue{std::string("x")}) == "x");
  CHECK(to_string(PropertyValue{2.0}) == "2");
}
