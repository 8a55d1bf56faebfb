#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dtgraph/graph.hpp"
#include "dtgraph/taxonomy.hpp"

namespace dtgraph {

struct MergePolicy {
  bool case_fold = true;
  bool trim = true;
  /// Highest priority first. Must be a permutation of the three sources.
  std::array<Source, 3> priority{Source::Plc, Source::Io, Source::Position};
  bool semantic_merge = true;

  void validate() const;
  /// Position of `s` in the priority list, 0 = highest.
  int rank(Source s) const noexcept;
  /// Parses "plc,io,position".
  static std::array<Source, 3> parse_priority(std::string_view text);
};

struct PropertyConflict {
  std::string node;
  std::string key;
  std::string chosen_source;
};

/// Equivalence class that joined types which are not on one chain of the
/// taxonomy (one node label-equivalent to two incomparable ones).
struct AmbiguousMerge {
  std::string node;
  std::vector<std::string> types;
};

struct MergeReport {
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t merged_by_label = 0;
  std::size_t merged_by_semantics = 0;
  std::vector<PropertyConflict> property_conflicts;
  std::vector<AmbiguousMerge> ambiguous;
  std::size_t component_count = 0;

  nlohmann::json to_json() const;
};

struct MergeResult {
  PropertyGraph graph;
  MergeReport report;
};

std::string normalize_name(std::string_view name, const MergePolicy& policy);

/// Same normalized name and canonical types equal or related by subtyping.
bool node_equivalent(const Node& a, const Node& b, const Taxonomy& taxonomy,
                     const MergePolicy& policy);

/// Collapses the parts into one graph: a label pass over name + type, then an
/// optional semantic pass that joins same-name nodes whose types share an
/// ancestor below the root. Output ids are deterministic and independent of
/// the order of `parts`.
MergeResult merge_graphs(std::span<const PropertyGraph> parts, const Taxonomy& taxonomy,
                         const MergePolicy& policy = {});
/// Same result, with the pairwise equivalence tests run on one thread.
MergeResult merge_graphs_serial(std::span<const PropertyGraph> parts, const Taxonomy& taxonomy,
                                const MergePolicy& policy = {});

}  // namespace dtgraph
