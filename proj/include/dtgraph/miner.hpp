#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "dtgraph/dfs_code.hpp"
#include "dtgraph/embedding.hpp"
#include "dtgraph/graph.hpp"
#include "dtgraph/taxonomy.hpp"

namespace dtgraph {

struct MiningParams {
  std::size_t min_support = 2;
  std::size_t max_edges = 8;
  MatchMode mode = MatchMode::Exact;
  bool closed_only = false;
  TierSet tiers{Tier::DomainInternal, Tier::InterDomain};
  /// Safety cap on the number of reported patterns.
  std::size_t max_patterns = 10000;
  /// 0 = OpenMP default.
  int threads = 0;

  /// Throws Validation unless min_support >= 2, max_edges >= 1,
  /// max_patterns >= 1 and the tier set is non-empty.
  void validate() const;
  nlohmann::json to_json() const;
  static MiningParams from_json(const nlohmann::json& doc);
};

struct Pattern {
  DFSCode code;
  PropertyGraph graph;  // graph_of(code)
  std::size_t support = 0;
  std::vector<Embedding> embeddings;

  std::size_t node_count() const noexcept { return graph.node_count(); }
  std::size_t edge_count() const noexcept { return graph.edge_count(); }
};

/// Frequent connected patterns of the tier projection of `abox`, sorted by
/// (edge count, code). Node labels are node types (canonical types in
/// generalized mode), edge labels are relations; names, properties, edge
/// direction and self-loops are not part of any pattern.
///
/// Throws Validation for bad parameters and Overflow when more than
/// params.max_patterns patterns are frequent.
std::vector<Pattern> mine_frequent(const PropertyGraph& abox, const MiningParams& params,
                                   const Taxonomy* taxonomy = nullptr);
/// Same output, seeds explored one after another on the calling thread.
std::vector<Pattern> mine_frequent_serial(const PropertyGraph& abox, const MiningParams& params,
                                          const Taxonomy* taxonomy = nullptr);

/// Test oracle: enumerates every connected edge subset with up to
/// max_edges edges, groups them by canonical_signature and measures MNI per
/// group. Exact mode only. Throws UnsupportedSize above 25 nodes or 4 edges.
std::vector<Pattern> brute_force_frequent(const PropertyGraph& abox, const MiningParams& params);

/// Drops every pattern that has a proper super-pattern in `patterns` with the
/// same support.
std::vector<Pattern> filter_closed(const std::vector<Pattern>& patterns);

/// {"params": {...}, "patterns": [{"code", "support", "nodes", "edges",
/// "embeddings"}]}
nlohmann::json patterns_to_json(const std::vector<Pattern>& patterns, const MiningParams& params);
std::vector<Pattern> patterns_from_json(const nlohmann::json& doc);

}  // namespace dtgraph
