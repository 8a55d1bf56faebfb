#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtgraph/embedding.hpp"
#include "dtgraph/graph.hpp"
#include "dtgraph/miner.hpp"
#include "dtgraph/taxonomy.hpp"

namespace dtgraph {

/// What one instance node stands for: the replaced nodes (members[k] is the
/// node matched by pattern node k) and every edge that ran between them.
struct InstanceRecord {
  std::string node;  // id of the instance node in the residual
  std::vector<Node> members;
  std::vector<Edge> internal;
};

struct Template {
  std::string id;
  DFSCode code;
  PropertyGraph pattern;
  /// Pattern node indices that carry at least one boundary edge.
  std::vector<std::size_t> ports;
  /// Node-disjoint, in selection order.
  std::vector<Embedding> instances;
  std::vector<InstanceRecord> records;  // parallel to instances
};

// The compressed form. Boundary edges keep their ids; an edge with one end
// moved onto an instance node carries "port" = pattern node index, an edge
// whose two ends moved in the same step carries "src_port" and "dst_port".
// The properties an edge had before each rewrite are stacked in `rewired` so
// that expand restores them exactly.
struct TemplatizedGraph {
  PropertyGraph residual{false, true};
  std::vector<Template> templates;
  std::map<std::string, std::vector<Properties>> rewired;
  bool base_multigraph = false;
};

struct TemplateParams {
  std::size_t max_templates = 16;
  MatchMode mode = MatchMode::Exact;
  const Taxonomy* taxonomy = nullptr;

  void validate() const;
};

/// (nodes + edges) * (disjoint instances - 1), never negative.
std::size_t score_pattern(const Pattern& pattern, std::size_t disjoint_instances);
/// Uses the embeddings stored in the pattern.
std::size_t score_pattern(const Pattern& pattern);

/// Greedy node-disjoint subset, scanning `embeddings` in sorted order.
std::vector<Embedding> select_instances(const Pattern& pattern, std::vector<Embedding> embeddings);

/// Repeatedly promotes the candidate with the best score against the current
/// residual (ties to the smaller code) until max_templates templates exist or
/// nothing scores above zero. Throws Validation when a stored embedding of a
/// pattern is not an embedding of `abox`.
TemplatizedGraph templatize(const PropertyGraph& abox, const std::vector<Pattern>& patterns,
                            const TemplateParams& params = {});
/// Another round on an already compressed graph; new templates may contain
/// instance nodes of earlier ones. Template ids continue the numbering.
TemplatizedGraph templatize(TemplatizedGraph base, const std::vector<Pattern>& patterns,
                            const TemplateParams& params = {});

/// Same result, candidates scored one after another on the calling thread.
TemplatizedGraph templatize_serial(const PropertyGraph& abox, const std::vector<Pattern>& patterns,
                                   const TemplateParams& params = {});

/// Inverse of templatize. Throws Integrity on a dangling template reference
/// or port index.
PropertyGraph expand(const TemplatizedGraph& templatized);

struct CompressionStats {
  std::size_t nodes_before = 0;
  std::size_t edges_before = 0;
  std::size_t nodes_after = 0;
  std::size_t edges_after = 0;
  std::size_t template_count = 0;
  /// Elements spent on template definitions, included in the "after" side.
  std::size_t template_elements = 0;
  double reduction_ratio = 0.0;

  nlohmann::json to_json() const;
};

CompressionStats compression_stats(const PropertyGraph& before, const PropertyGraph& after);
CompressionStats compression_stats(const PropertyGraph& before, const TemplatizedGraph& after);

/// {"templates": [...], "residual": <graph>, "rewired": {...},
/// "base_multigraph": bool}
nlohmann::json library_to_json(const TemplatizedGraph& templatized);
TemplatizedGraph library_from_json(const nlohmann::json& doc);

/// Distinct fill colors, one per index.
std::vector<std::string> distinct_colors(std::size_t count);
/// DOT of the expanded graph in which the members of every first-level
/// instance share one color and no two instances share a color.
std::string instances_to_dot(const TemplatizedGraph& templatized);

}  // namespace dtgraph
