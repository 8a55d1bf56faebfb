#include <doctest.h>

#include <numeric>
#include <random>

#include "dtgraph/canonical.hpp"
#include "dtgraph/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dtgraph;

namespace {

// Same graph with node insertion order shuffled and fresh ids.
PropertyGraph shuffled(const PropertyGraph& g, std::uint64_t seed) {
  std::vector<std::size_t> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  PropertyGraph out(g.directed());
  for (std::size_t v : order) {
    Node n = g.nodes()[v];
    n.id = "x" + n.id;
    out.add_node(std::move(n));
  }
  std::vector<std::size_t> edges(g.edge_count());
  std::iota(edges.begin(), edges.end(), 0);
  std::shuffle(edges.begin(), edges.end(), rng);
  for (std::size_t e : edges) {
    out.add_edge("x" + g.nodes()[g.src_index(e)].id, "x" + g.nodes()[g.dst_index(e)].id, g.edges()[e].relation,
                 Tier::DomainInternal);
  }
  return out;
}

}  // namespace

TEST_CASE("invariant under relabelling") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    const auto g = fixtures::random_graph(seed, 8, 12, 3);
    CHECK(canonical_signature(g) == canonical_signature(shuffled(g, seed + 100)));
  }
  const auto w = fixtures::warehouse_abox();
  CHECK(canonical_signature(w) == canonical_signature(shuffled(w, 9)));
}

TEST_CASE("distinguishes exactly the non-isomorphic pairs") {
  for (std::uint64_t a = 1; a <= 40; ++a) {
    for (std::uint64_t b = a + 1; b <= 40; ++b) {
      const auto ga = fixtures::random_graph(a, 5, 6, 2);
      const auto gb = fixtures::random_graph(b, 5, 6, 2);
      CAPTURE(a);
      CAPTURE(b);
      CHECK((canonical_signature(ga) == canonical_signature(gb)) == oracles::isomorphic(ga, gb));
    }
  }
}

TEST_CASE("ignores names, tiers and properties") {
  PropertyGraph a, b;
  a.add_node(Node{"1", "one", "T", Tier::DomainInternal, {{"k", 1.0}}});
  b.add_node(Node{"2", "two", "T", Tier::Environment});
  CHECK(canonical_signature(a) == canonical_signature(b));
  CHECK(canonical_signature(PropertyGraph{}) == canonical_signature(PropertyGraph{}));
}

TEST_CASE("direction matters only for directed graphs") {
  PropertyGraph p(true), q(true);
  for (auto* g : {&p, &q}) {
    g->add_node(Node{"a", "a", "A"});
    g->add_node(Node{"b", "b", "A"});
    g->add_node(Node{"c", "c", "A"});
  }
  p.add_edge("a", "b", "r", Tier::DomainInternal);
  p.add_edge("b", "c", "r", Tier::DomainInternal);
  q.add_edge("a", "b", "r", Tier::DomainInternal);
  q.add_edge("c", "b", "r", Tier::DomainInternal);
  CHECK(canonical_signature(p) != canonical_signature(q));
}

TEST_CASE("size bound") {
  const auto w = fixtures::warehouse_abox();
  try {
    canonical_signature(w, 10);
    FAIL("expected UnsupportedSize");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedSize);
  }
}
