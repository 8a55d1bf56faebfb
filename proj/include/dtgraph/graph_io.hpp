#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "dtgraph/graph.hpp"

namespace dtgraph {

using json = nlohmann::json;

/// Reads and parses a JSON file. Throws Io when the file cannot be opened and
/// Parse on malformed JSON.
json read_json_file(const std::filesystem::path& path);
/// Writes `doc` with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& doc);
void write_text_file(const std::filesystem::path& path, const std::string& text);

json properties_to_json(const Properties& props);
/// Rejects nested values (objects, arrays, null) with Validation.
Properties properties_from_json(const json& doc);

json node_to_json(const Node& node);
json edge_to_json(const Edge& edge);
Node node_from_json(const json& doc);
Edge edge_from_json(const json& doc);

/// Canonical persistence format:
/// {"directed": false, "nodes": [...], "edges": [...]}
json graph_to_json(const PropertyGraph& graph);
PropertyGraph graph_from_json(const json& doc);

PropertyGraph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const PropertyGraph& graph);

std::string to_graphml(const PropertyGraph& graph);

/// DOT rendering. Nodes are labelled "name\ntype" and filled by tier unless
/// `node_colors` assigns an explicit color to the node id.
std::string to_dot(const PropertyGraph& graph,
                   const std::map<std::string, std::string>& node_colors = {});

/// Fill color used for a tier in DOT output.
std::string_view tier_color(Tier tier) noexcept;

}  // namespace dtgraph
