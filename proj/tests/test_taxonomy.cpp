#include <doctest.h>

#include "dtgraph/error.hpp"
#include "dtgraph/taxonomy.hpp"
#include "fixtures.hpp"

using namespace dtgraph;

namespace {

ErrorKind kind_of(const std::vector<TypeEntry>& entries) {
  try {
    Taxonomy::from_entries(entries);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("canonical types through aliases") {
  const auto t = fixtures::warehouse_taxonomy();
  CHECK(t.size() == 7);
  CHECK(t.canonical_type("LagerPlatz") == CanonicalType{"StoragePlace", true});
  CHECK(t.canonical_type("  Storage Place ") == CanonicalType{"StoragePlace", true});
  CHECK(t.canonical_type("storageplace") == CanonicalType{"StoragePlace", true});
  CHECK(t.canonical_type("Gizmo") == CanonicalType{"Gizmo", false});
}

TEST_CASE("subtypes, ancestors and generalization") {
  const auto t = fixtures::warehouse_taxonomy();
  CHECK(t.is_subtype("Drive", "Component"));
  CHECK(t.is_subtype("Drive", "Drive"));
  CHECK(t.is_subtype("Drive", "Thing"));
  CHECK_FALSE(t.is_subtype("Component", "Drive"));
  CHECK(t.generalize("Drive", "StoragePlace") == "Component");
  CHECK(t.generalize("Drive", "Warehouse") == "Thing");
  CHECK(t.generalize("Drive", "Drive") == "Drive");
  CHECK(t.ancestors(t.canonical_type("LagerPlatz")) == std::vector<std::string>{"Component", "Thing"});
  CHECK(t.ancestors(t.canonical_type("Gizmo")) == std::vector<std::string>{"Thing"});
  CHECK(t.depth("Drive") == 2);
  CHECK(t.parent_of("Warehouse") == "Thing");
  CHECK_THROWS_AS(t.is_subtype("Gizmo", "Thing"), Error);
  // unresolved terms sit directly under the root
  CHECK(t.is_subtype(t.canonical_type("Gizmo"), t.canonical_type("Thing")));
  CHECK(t.generalize(t.canonical_type("Gizmo"), t.canonical_type("Drive")) == "Thing");
}

TEST_CASE("bad taxonomies") {
  CHECK(kind_of({{"A", "B", {}}}) == ErrorKind::UnknownParent);
  CHECK(kind_of({{"A", "B", {}}, {"B", "A", {}}}) == ErrorKind::TaxonomyCycle);
  CHECK(kind_of({{"A", "", {}}, {"A", "", {}}}) == ErrorKind::DuplicateType);
  CHECK(kind_of({{"Thing", "", {}}}) == ErrorKind::DuplicateType);
  CHECK(kind_of({{"A", "", {"x"}}, {"B", "", {"X"}}}) == ErrorKind::AliasConflict);
  CHECK(kind_of({{"A", "", {"b"}}, {"B", "", {}}}) == ErrorKind::AliasConflict);
  CHECK(kind_of({{"A", "", {}}, {"B", "A", {"c"}}}) == ErrorKind::Io);  // valid
  CHECK_THROWS_AS(Taxonomy::from_json(nlohmann::json::parse(R"({"types":{}})")), Error);
  CHECK_THROWS_AS(Taxonomy::load("/nonexistent/taxonomy.json"), Error);
}

TEST_CASE("default taxonomy") {
  const Taxonomy t;
  CHECK(t.size() == 1);
  CHECK(t.contains("Thing"));
  CHECK(fold_term("  MiXed ") == "mixed");
}
