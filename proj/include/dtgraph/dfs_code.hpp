#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dtgraph/graph.hpp"

namespace dtgraph {

/// One step of a depth-first construction: the edge between discovery
/// indices i and j. Forward iff j > i (j is then a new vertex).
struct EdgeTuple {
  int i = 0;
  int j = 0;
  std::string li;  // node label of i
  std::string le;  // relation
  std::string lj;  // node label of j

  bool forward() const noexcept { return j > i; }
  friend bool operator==(const EdgeTuple&, const EdgeTuple&) = default;
};

/// gSpan tuple order. Backward tuples sort before forward ones; backward
/// tuples by (i, j, le, li, lj), forward tuples by (j, larger i first, li, le,
/// lj). Labels compare as raw bytes.
int compare(const EdgeTuple& a, const EdgeTuple& b) noexcept;

struct DFSCode {
  std::vector<EdgeTuple> tuples;

  std::size_t size() const noexcept { return tuples.size(); }
  bool empty() const noexcept { return tuples.empty(); }
  int vertex_count() const noexcept;

  friend bool operator==(const DFSCode&, const DFSCode&) = default;
};

/// Lexicographic extension of the tuple order; a proper prefix sorts first.
int compare(const DFSCode& a, const DFSCode& b) noexcept;

struct DFSCodeLess {
  bool operator()(const DFSCode& a, const DFSCode& b) const noexcept { return compare(a, b) < 0; }
};

/// Minimum DFS code of a connected graph, with node type as the vertex label
/// and relation as the edge label. Edge direction is ignored.
/// Throws Validation for graphs without edges, with self-loops, or
/// disconnected ones.
DFSCode min_dfs_code(const PropertyGraph& graph);

/// True iff `code` is the minimum code of the graph it spells. Throws
/// Validation for an empty or structurally invalid code.
bool is_min(const DFSCode& code);

/// Graph spelled by a code: node k is discovery index k, named "v<k>".
PropertyGraph graph_of(const DFSCode& code);

/// [[i, j, "li", "le", "lj"], ...]
nlohmann::json code_to_json(const DFSCode& code);
DFSCode code_from_json(const nlohmann::json& doc);
std::string to_string(const DFSCode& code);

}  // namespace dtgraph
