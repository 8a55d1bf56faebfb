#include <doctest.h>

#include <map>

#include "dtgraph/error.hpp"
#include "dtgraph/miner.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dtgraph;

namespace {

std::map<std::string, std::size_t> by_code(const std::vector<Pattern>& ps) {
  std::map<std::string, std::size_t> out;
  for (const auto& p : ps) out[to_string(p.code)] = p.support;
  return out;
}

PropertyGraph triangle_pair() {
  PropertyGraph g;
  for (int i = 0; i < 6; ++i) g.add_node(Node{"v" + std::to_string(i), "v", "X"});
  for (int base : {0, 3}) {
    auto id = [&](int k) { return "v" + std::to_string(base + k); };
    g.add_edge(id(0), id(1), "r", Tier::DomainInternal);
    g.add_edge(id(1), id(2), "r", Tier::DomainInternal);
    g.add_edge(id(2), id(0), "r", Tier::DomainInternal);
  }
  return g;
}

}  // namespace

TEST_CASE("empty inputs give empty results") {
  MiningParams params;
  CHECK(mine_frequent(PropertyGraph{}, params).empty());
  params.min_support = 30;
  CHECK(mine_frequent(fixtures::warehouse_abox(), params).empty());
}

TEST_CASE("parameter validation") {
  const auto g = triangle_pair();
  MiningParams params;
  params.min_support = 1;
  CHECK_THROWS_AS(mine_frequent(g, params), Error);
  params = {};
  params.max_edges = 0;
  CHECK_THROWS_AS(mine_frequent(g, params), Error);
  params = {};
  params.tiers = TierSet{};
  CHECK_THROWS_AS(mine_frequent(g, params), Error);
  params = {};
  params.mode = MatchMode::Generalized;
  CHECK_THROWS_AS(mine_frequent(g, params), Error);  // no taxonomy
}

TEST_CASE("two triangles") {
  MiningParams params;
  params.max_edges = 3;
  const auto got = by_code(mine_frequent(triangle_pair(), params));
  // hand count: edge, path and triangle, each with MNI 6
  const std::map<std::string, std::size_t> expected{
      {"(0,1,X,r,X)", 6},
      {"(0,1,X,r,X)(1,2,X,r,X)", 6},
      {"(0,1,X,r,X)(1,2,X,r,X)(2,0,X,r,X)", 6},
  };
  CHECK(got == expected);
  params.closed_only = true;
  const auto closed = by_code(mine_frequent(triangle_pair(), params));
  CHECK(closed == std::map<std::string, std::size_t>{{"(0,1,X,r,X)(1,2,X,r,X)(2,0,X,r,X)", 6}});
}

TEST_CASE("warehouse contains the storage row pattern") {
  const auto abox = fixtures::warehouse_abox();
  MiningParams params;
  params.min_support = fixtures::kRows;
  params.max_edges = fixtures::kRowEdges;
  const auto patterns = mine_frequent(abox, params);
  std::size_t rows = 0;
  for (const auto& p : patterns) {
    CHECK(p.support >= params.min_support);
    if (p.edge_count() == fixtures::kRowEdges && p.node_count() == fixtures::kRowNodes) {
      ++rows;
      CHECK(p.support == fixtures::kRows);
      CHECK(p.embeddings.size() == fixtures::kRows);
    }
  }
  CHECK(rows == 1);
  CHECK(std::is_sorted(patterns.begin(), patterns.end(), [](const Pattern& a, const Pattern& b) {
    if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
    return compare(a.code, b.code) < 0;
  }));
}

TEST_CASE("tier projection") {
  const auto abox = fixtures::warehouse_abox();
  MiningParams params;
  params.min_support = fixtures::kRows;
  params.tiers = TierSet{Tier::DomainInternal};
  for (const auto& p : mine_frequent(abox, params)) {
    for (const auto& t : p.code.tuples) CHECK(t.le != "correlates_with");
  }
}

TEST_CASE("agrees with the brute-force oracle") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const auto g = fixtures::random_graph(seed, 12, 16, 2);
    MiningParams params;
    params.max_edges = 3;
    CHECK(by_code(mine_frequent(g, params)) == by_code(brute_force_frequent(g, params)));
  }
}

TEST_CASE("brute force refuses large inputs") {
  MiningParams params;
  params.max_edges = 5;
  CHECK_THROWS_AS(brute_force_frequent(triangle_pair(), params), Error);
}

TEST_CASE("support is anti-monotone and every code is minimal") {
  const auto g = fixtures::planted_graph(3);
  MiningParams params;
  params.max_edges = 4;
  const auto patterns = mine_frequent(g, params);
  REQUIRE_FALSE(patterns.empty());
  for (const auto& p : patterns) {
    CHECK(is_min(p.code));
    CHECK(p.support == oracles::mni(oracles::all_embeddings(p.graph, g), p.node_count()));
    for (const auto& sub : oracles::one_edge_removals(p.graph)) {
      CHECK(oracles::mni(oracles::all_embeddings(sub, g), sub.node_count()) >= p.support);
    }
  }
}

TEST_CASE("pattern cap") {
  MiningParams params;
  params.max_patterns = 2;
  try {
    mine_frequent(triangle_pair(), params);
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}

TEST_CASE("generalized mode drops generalizations with identical embeddings") {
  PropertyGraph g;
  for (int i = 0; i < 4; ++i) {
    const auto p = "p" + std::to_string(i), d = "d" + std::to_string(i);
    g.add_node(Node{p, p, "StoragePlace"});
    g.add_node(Node{d, d, "Drive"});
    g.add_edge(d, p, "correlates_with", Tier::InterDomain);
  }
  const auto tax = fixtures::warehouse_taxonomy();
  MiningParams params;
  params.mode = MatchMode::Generalized;
  const auto patterns = mine_frequent(g, params, &tax);
  REQUIRE(patterns.size() == 1);
  CHECK(to_string(patterns[0].code) == "(0,1,Drive,correlates_with,StoragePlace)");
  CHECK(patterns[0].support == 4);
}

TEST_CASE("generalized mode finds what exact mode cannot") {
  // two rows of different kinds of component, same shape
  PropertyGraph g;
  for (int i = 0; i < 2; ++i) {
    const auto s = std::to_string(i);
    g.add_node(Node{"r" + s, "r", "StorageRow"});
    g.add_node(Node{"c" + s, "c", "Conveyor"});
    g.add_node(Node{"d" + s, "d", "Drive"});
    g.add_edge("d" + s, "r" + s, "functional_group", Tier::DomainInternal);
    g.add_edge("d" + s, "c" + s, "functional_group", Tier::DomainInternal);
  }
  MiningParams params;
  CHECK(mine_frequent(g, params).size() == 3);
  const auto tax = fixtures::warehouse_taxonomy();
  params.mode = MatchMode::Generalized;
  const auto patterns = mine_frequent(g, params, &tax);
  const auto got = by_code(patterns);
  // one general edge covering both kinds of grouped component
  CHECK(got.count("(0,1,Component,functional_group,Drive)") == 1);
  CHECK(got.at("(0,1,Component,functional_group,Drive)") == 2);
  // the general path covers the same node sets as the exact one
  CHECK(got.count("(0,1,Component,functional_group,Drive)(1,2,Drive,functional_group,Component)") == 0);
  CHECK(got.count("(0,1,Conveyor,functional_group,Drive)(1,2,Drive,functional_group,StorageRow)") == 1);
}

TEST_CASE("closed filter") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    const auto g = fixtures::random_graph(seed, 10, 14, 2);
    MiningParams params;
    params.max_edges = 3;
    const auto all = mine_frequent(g, params);
    const auto closed = filter_closed(all);
    params.closed_only = true;
    CHECK(by_code(mine_frequent(g, params)) == by_code(closed));
    for (const auto& p : all) {
      bool dominated = false;
      for (const auto& q : all) {
        if (q.edge_count() > p.edge_count() && q.support == p.support && oracles::contains(p.graph, q.graph)) {
          dominated = true;
        }
      }
      CHECK(by_code(closed).count(to_string(p.code)) == (dominated ? 0u : 1u));
    }
  }
}

TEST_CASE("JSON round trip is deterministic") {
  const auto g = fixtures::planted_graph(5);
  MiningParams params;
  params.max_edges = 3;
  const auto patterns = mine_frequent(g, params);
  const auto doc = patterns_to_json(patterns, params);
  const auto back = patterns_from_json(doc);
  REQUIRE(back.size() == patterns.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].code == patterns[i].code);
    CHECK(back[i].support == patterns[i].support);
    CHECK(back[i].embeddings == patterns[i].embeddings);
  }
  CHECK(patterns_to_json(back, params).dump() == doc.dump());
  CHECK(MiningParams::from_json(params.to_json()).to_json() == params.to_json());
  params.threads = 1;
  CHECK(patterns_to_json(mine_frequent(g, params), params).dump() == doc.dump());
}
