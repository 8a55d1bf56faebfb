#include "dtgraph/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "dtgraph/error.hpp"

namespace dtgraph {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

json properties_to_json(const Properties& props) {
  json out = json::object();
  for (const auto& [key, value] : props) {
    std::visit([&out, &key](const auto& v) { out[key] = v; }, value);
  }
  return out;
}

Properties properties_from_json(const json& doc) {
  Properties out;
  if (doc.is_null()) return out;
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "properties must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (value.is_boolean()) {
      out.emplace(key, value.get<bool>());
    } else if (value.is_number()) {
      out.emplace(key, value.get<double>());
    } else if (value.is_string()) {
      out.emplace(key, value.get<std::string>());
    } else {
      throw Error(ErrorKind::Validation,
                  "property '" + key + "' must be a string, number or boolean");
    }
  }
  return out;
}

namespace {

json sources_to_json(SourceSet prov) {
  json out = json::array();
  for (Source s : prov.list()) out.push_back(std::string(to_string(s)));
  return out;
}

SourceSet sources_from_json(const json& doc) {
  SourceSet out;
  if (doc.is_null()) return out;
  if (!doc.is_array()) throw Error(ErrorKind::Validation, "\"prov\" must be an array");
  for (const auto& s : doc) {
    if (!s.is_string()) throw Error(ErrorKind::Validation, "\"prov\" entries must be strings");
    out.insert(source_from_string(s.get<std::string>()));
  }
  return out;
}

std::string required_string(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_string()) {
    throw Error(ErrorKind::Validation, std::string("missing string field \"") + key + "\"");
  }
  return it->get<std::string>();
}

Tier required_tier(const json& doc) {
  auto it = doc.find("tier");
  if (it == doc.end() || !it->is_number_integer()) {
    throw Error(ErrorKind::Validation, "missing integer field \"tier\"");
  }
  return tier_from_int(it->get<int>());
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

json node_to_json(const Node& node) {
  return json{{"id", node.id},       {"name", node.name},
              {"type", node.type},   {"tier", to_int(node.tier)},
              {"props", properties_to_json(node.props)}, {"prov", sources_to_json(node.prov)}};
}

json edge_to_json(const Edge& edge) {
  return json{{"id", edge.id},
              {"src", edge.src},
              {"dst", edge.dst},
              {"rel", edge.relation},
              {"tier", to_int(edge.tier)},
              {"props", properties_to_json(edge.props)},
              {"prov", sources_to_json(edge.prov)}};
}

Node node_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "node must be a JSON object");
  Node n;
  n.id = required_string(doc, "id");
  n.name = required_string(doc, "name");
  n.type = required_string(doc, "type");
  n.tier = required_tier(doc);
  n.props = properties_from_json(doc.value("props", json::object()));
  n.prov = sources_from_json(doc.value("prov", json::array()));
  return n;
}

Edge edge_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "edge must be a JSON object");
  Edge e;
  e.id = required_string(doc, "id");
  e.src = required_string(doc, "src");
  e.dst = required_string(doc, "dst");
  e.relation = required_string(doc, "rel");
  e.tier = required_tier(doc);
  e.props = properties_from_json(doc.value("props", json::object()));
  e.prov = sources_from_json(doc.value("prov", json::array()));
  return e;
}

json graph_to_json(const PropertyGraph& graph) {
  json doc;
  doc["directed"] = graph.directed();
  if (graph.multigraph()) doc["multi"] = true;
  json nodes = json::array();
  for (const Node& n : graph.nodes()) nodes.push_back(node_to_json(n));
  json edges = json::array();
  for (const Edge& e : graph.edges()) edges.push_back(edge_to_json(e));
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  return doc;
}

PropertyGraph graph_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "graph document must be an object");
  const bool directed = doc.value("directed", false);
  const bool multi = doc.value("multi", false);
  PropertyGraph g(directed, multi);
  const json nodes = doc.value("nodes", json::array());
  const json edges = doc.value("edges", json::array());
  if (!nodes.is_array() || !edges.is_array()) {
    throw Error(ErrorKind::Validation, "\"nodes\" and \"edges\" must be arrays");
  }
  for (const auto& n : nodes) g.add_node(node_from_json(n));
  for (const auto& e : edges) g.add_edge(edge_from_json(e));
  return g;
}

PropertyGraph read_graph(const std::filesystem::path& path) {
  json doc = read_json_file(path);
  try {
    return graph_from_json(doc);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_graph(const std::filesystem::path& path, const PropertyGraph& graph) {
  write_json_file(path, graph_to_json(graph));
}

std::string to_graphml(const PropertyGraph& graph) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
     << "  <key id=\"type\" for=\"node\" attr.name=\"type\" attr.type=\"string\"/>\n"
     << "  <key id=\"tier\" for=\"node\" attr.name=\"tier\" attr.type=\"int\"/>\n"
     << "  <key id=\"rel\" for=\"edge\" attr.name=\"rel\" attr.type=\"string\"/>\n"
     << "  <graph id=\"G\" edgedefault=\"" << (graph.directed() ? "directed" : "undirected")
     << "\">\n";
  for (const Node& n : graph.nodes()) {
    os << "    <node id=\"" << xml_escape(n.id) << "\">\n"
       << "      <data key=\"name\">" << xml_escape(n.name) << "</data>\n"
       << "      <data key=\"type\">" << xml_escape(n.type) << "</data>\n"
       << "      <data key=\"tier\">" << to_int(n.tier) << "</data>\n"
       << "    </node>\n";
  }
  for (const Edge& e : graph.edges()) {
    os << "    <edge id=\"" << xml_escape(e.id) << "\" source=\"" << xml_escape(e.src)
       << "\" target=\"" << xml_escape(e.dst) << "\">\n"
       << "      <data key=\"rel\">" << xml_escape(e.relation) << "</data>\n"
       << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

std::string_view tier_color(Tier tier) noexcept {
  // Lower tiers blue/yellow, upper tiers green/red.
  switch (tier) {
    case Tier::DomainInternal: return "lightblue";
    case Tier::InterDomain: return "gold";
    case Tier::SystemOfSystems: return "palegreen";
    case Tier::Environment: return "salmon";
  }
  return "white";
}

std::string to_dot(const PropertyGraph& graph, const std::map<std::string, std::string>& node_colors) {
  const char* arrow = graph.directed() ? " -> " : " -- ";
  std::ostringstream os;
  os << (graph.directed() ? "digraph" : "graph") << " G {\n"
     << "  node [style=filled];\n";
  for (const Node& n : graph.nodes()) {
    auto it = node_colors.find(n.id);
    std::string color = it != node_colors.end() ? it->second : std::string(tier_color(n.tier));
    os << "  \"" << dot_escape(n.id) << "\" [label=\"" << dot_escape(n.name) << "\\n"
       << dot_escape(n.type) << "\", fillcolor=\"" << color << "\"];\n";
  }
  for (const Edge& e : graph.edges()) {
    os << "  \"" << dot_escape(e.src) << "\"" << arrow << "\"" << dot_escape(e.dst)
       << "\" [label=\"" << dot_escape(e.relation) << "\", color=\"" << tier_color(e.tier)
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dtgraph
