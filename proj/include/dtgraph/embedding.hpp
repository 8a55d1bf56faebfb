#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "dtgraph/graph.hpp"
#include "dtgraph/taxonomy.hpp"

namespace dtgraph {

enum class MatchMode { Exact, Generalized };

std::string_view to_string(MatchMode mode) noexcept;
/// "exact" or "generalized"; anything else is a Validation error.
MatchMode match_mode_from_string(std::string_view text);

/// nodes[k] is the ABox node id that pattern node k maps to.
struct Embedding {
  std::vector<std::string> nodes;

  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

/// Whether an ABox node of type `type` may stand in for a pattern node
/// labelled `label`. Exact mode compares the strings; generalized mode also
/// accepts `label` being a taxonomy ancestor of the node's canonical type.
bool label_matches(std::string_view label, std::string_view type, MatchMode mode,
                   const Taxonomy* taxonomy);

/// Every injective mapping of the pattern's nodes into the ABox that keeps
/// labels compatible and maps the pattern's relations (counted with
/// multiplicity per node pair) onto ABox relations. Edge direction is
/// ignored. Sorted.
///
/// Generalized mode needs a taxonomy; without one it behaves like exact mode.
std::vector<Embedding> embeddings(const PropertyGraph& pattern, const PropertyGraph& abox,
                                  MatchMode mode = MatchMode::Exact,
                                  const Taxonomy* taxonomy = nullptr);

/// True iff `e` is one of embeddings(pattern, abox, mode, taxonomy).
bool is_embedding(const Embedding& e, const PropertyGraph& pattern, const PropertyGraph& abox,
                  MatchMode mode = MatchMode::Exact, const Taxonomy* taxonomy = nullptr);

/// Minimum over pattern nodes of the number of distinct ABox nodes they map
/// to; 0 without embeddings.
std::size_t mni_support(const std::vector<Embedding>& embeddings, std::size_t pattern_nodes);

}  // namespace dtgraph
