#pragma once

// Integer-labelled DFS-code machinery shared by min_dfs_code, is_min and the
// miner. Label ids are ranks in a sorted vocabulary, so comparing ids is the
// same as comparing label text byte-wise.

#include <string>
#include <string_view>
#include <vector>

namespace dtgraph::detail {

class LabelTable {
 public:
  LabelTable() = default;
  /// Sorts and deduplicates the vocabulary.
  explicit LabelTable(std::vector<std::string> vocab);

  /// -1 when absent.
  int id(std::string_view label) const;
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

struct Tuple {
  int i = 0;
  int j = 0;
  int li = 0;
  int le = 0;
  int lj = 0;

  bool forward() const noexcept { return j > i; }
  friend bool operator==(const Tuple&, const Tuple&) = default;
};

/// gSpan order: backward before forward; backward by (i, j, edge label);
/// forward by (j, deeper i first, labels).
int compare(const Tuple& a, const Tuple& b) noexcept;

struct TupleLess {
  bool operator()(const Tuple& a, const Tuple& b) const noexcept { return compare(a, b) < 0; }
};

using Code = std::vector<Tuple>;

int compare(const Code& a, const Code& b) noexcept;

/// Code vertex indices on the rightmost path, rightmost vertex first.
std::vector<int> rightmost_path(const Code& code);
int vertex_count(const Code& code);

// Undirected labelled multigraph without self-loops. `admissible` lists the
// pattern labels that may be placed on a vertex (just its own label in exact
// mode, the label and its ancestors in generalized mode).
struct LabeledGraph {
  struct Adj {
    int to;
    int label;
    int edge;
  };
  std::vector<int> label;
  std::vector<std::vector<int>> admissible;
  std::vector<std::vector<Adj>> adj;
  int edge_count = 0;

  int vertex_count() const noexcept { return static_cast<int>(label.size()); }
  int add_vertex(int lbl);
  void add_edge(int u, int v, int lbl);
};

/// Pattern graph spelled out by a code (vertex i = code vertex i).
LabeledGraph graph_of(const Code& code);

/// Throws Validation when the tuples are not a legal rightmost-path
/// construction with consistent vertex labels.
void validate_code(const Code& code);

struct MinCodeResult {
  Code code;
  std::vector<int> vmap;  // code vertex -> graph vertex of one minimal traversal
};

/// Lexicographically smallest DFS code of a connected pattern graph with at
/// least one edge. Throws Validation when the graph is disconnected.
MinCodeResult min_code(const LabeledGraph& pattern);

/// True iff `code` equals the minimum code of its own graph.
bool is_min(const Code& code);

}  // namespace dtgraph::detail
