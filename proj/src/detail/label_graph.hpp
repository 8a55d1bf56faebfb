#pragma once

// Bridges between PropertyGraph / public codes and the integer machinery.

#include <string>
#include <vector>

#include "detail/code_core.hpp"
#include "dtgraph/dfs_code.hpp"
#include "dtgraph/graph.hpp"

namespace dtgraph::detail {

/// Node types and relations of `graph` interned in one table.
LabelTable labels_of(const PropertyGraph& graph);
LabelTable labels_of(const DFSCode& code);

/// Throws Validation on self-loops. Every label must be in `table`.
LabeledGraph to_labeled(const PropertyGraph& graph, const LabelTable& table);

Code to_internal(const DFSCode& code, const LabelTable& table);
DFSCode to_public(const Code& code, const LabelTable& table);

}  // namespace dtgraph::detail
