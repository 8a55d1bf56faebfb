#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtgraph/graph.hpp"

namespace dtgraph {

inline constexpr double kDefaultArrangementThreshold = 1.0;  // meters
inline constexpr double kDefaultIoCutoff = 0.8;

struct PositionEntry {
  std::string name;
  std::string type;
  std::array<double, 3> pos{};  // meters
};

struct PositionSet {
  std::vector<PositionEntry> entries;
};

/// Relation records from the rule-based PLC analysis. Every element is
/// tier 1 with provenance {plc}; repeated records collapse to one edge.
PropertyGraph parse_plc_relations(const nlohmann::json& doc);

PositionSet parse_position_records(const nlohmann::json& doc);

/// Nodes for every position entry and an "arranged_next_to" edge between
/// every pair whose Euclidean distance is <= threshold. Parallel over rows.
PropertyGraph derive_arrangement(const PositionSet& positions,
                                 double threshold = kDefaultArrangementThreshold);
/// Single-threaded reference for derive_arrangement.
PropertyGraph derive_arrangement_serial(const PositionSet& positions,
                                        double threshold = kDefaultArrangementThreshold);

/// Signal correlation records. Edges below `cutoff` are dropped but their
/// endpoints are kept; all elements are tier 2 with provenance {io}.
PropertyGraph parse_io_relations(const nlohmann::json& doc, double cutoff = kDefaultIoCutoff);

/// Value of the document's "source" field ("plc", "position" or "io").
Source document_source(const nlohmann::json& doc);

}  // namespace dtgraph
