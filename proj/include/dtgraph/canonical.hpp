#pragma once

#include <cstddef>
#include <string>

#include "dtgraph/graph.hpp"

namespace dtgraph {

inline constexpr std::size_t kDefaultSignatureBound = 64;

/// Canonical text form of a graph up to isomorphism. Only node type terms,
/// relation labels and (for directed graphs) edge orientation are taken into
/// account; names, ids, tiers and properties are ignored. Two graphs get the
/// same signature iff they are isomorphic under those labels.
///
/// Throws UnsupportedSize when the graph has more than `max_nodes` nodes.
std::string canonical_signature(const PropertyGraph& graph,
                                std::size_t max_nodes = kDefaultSignatureBound);

}  // namespace dtgraph
