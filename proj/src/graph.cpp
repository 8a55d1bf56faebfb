#include "dtgraph/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dtgraph/error.hpp"

namespace dtgraph {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::DuplicateId: return "duplicate-id";
    case ErrorKind::DuplicateEdge: return "duplicate-edge";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Conflict: return "conflict";
    case ErrorKind::UnsupportedSize: return "unsupported-size";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::UnknownType: return "unknown-type";
    case ErrorKind::TaxonomyCycle: return "taxonomy-cycle";
    case ErrorKind::UnknownParent: return "unknown-parent";
    case ErrorKind::DuplicateType: return "duplicate-type";
    case ErrorKind::AliasConflict: return "alias-conflict";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Tier tier_from_int(int level) {
  if (level < 1 || level > 4) {
    throw Error(ErrorKind::Validation, "tier must be in 1..4, got " + std::to_string(level));
  }
  return static_cast<Tier>(level);
}

TierSet TierSet::parse(std::string_view text) {
  TierSet out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(pos, comma - pos));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) {
      if (item.size() != 1 || item[0] < '1' || item[0] > '4') {
        throw Error(ErrorKind::Validation, "invalid tier '" + item + "'");
      }
      out.insert(tier_from_int(item[0] - '0'));
    }
    pos = comma + 1;
  }
  return out;
}

std::vector<int> TierSet::levels() const {
  std::vector<int> out;
  for (int l = 1; l <= 4; ++l) {
    if (contains(static_cast<Tier>(l))) out.push_back(l);
  }
  return out;
}

std::string TierSet::to_string() const {
  std::string out;
  for (int l : levels()) {
    if (!out.empty()) out += ',';
    out += std::to_string(l);
  }
  return out;
}

std::string_view to_string(Source s) noexcept {
  switch (s) {
    case Source::Plc: return "plc";
    case Source::Position: return "position";
    case Source::Io: return "io";
  }
  return "?";
}

Source source_from_string(std::string_view text) {
  if (text == "plc") return Source::Plc;
  if (text == "position") return Source::Position;
  if (text == "io") return Source::Io;
  throw Error(ErrorKind::Validation, "unknown source tag '" + std::string(text) + "'");
}

std::vector<Source> SourceSet::list() const {
  std::vector<Source> out;
  for (Source s : {Source::Plc, Source::Position, Source::Io}) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

std::string to_string(const PropertyValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          std::ostringstream os;
          os.precision(17);
          os << v;
          return os.str();
        } else {
          return v;
        }
      },
      value);
}

std::string PropertyGraph::fresh_id(char prefix, std::size_t& counter, const IdIndex& used) {
  std::string id;
  do {
    id = prefix + std::to_string(counter++);
  } while (used.contains(id));
  return id;
}

std::string PropertyGraph::add_node(Node node) {
  if (node.name.empty()) throw Error(ErrorKind::Validation, "node name must be non-empty");
  if (node.type.empty()) {
    throw Error(ErrorKind::Validation, "node '" + node.name + "' has an empty type");
  }
  if (node.id.empty()) {
    node.id = fresh_id('n', next_node_, node_ids_);
  } else if (node_ids_.contains(node.id)) {
    throw Error(ErrorKind::DuplicateId, "duplicate node id '" + node.id + "'");
  }
  node_ids_.emplace(node.id, nodes_.size());
  incident_.emplace_back();
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

std::string PropertyGraph::add_node(std::string_view name, std::string_view type, Tier tier,
                                    Properties props, SourceSet prov) {
  return add_node(Node{{}, std::string(name), std::string(type), tier, std::move(props), prov});
}

std::string PropertyGraph::edge_key(std::string_view src, std::string_view dst,
                                    std::string_view rel) const {
  if (!directed_ && dst < src) std::swap(src, dst);
  std::string key;
  key.reserve(src.size() + dst.size() + rel.size() + 2);
  key.append(src).push_back('\x1f');
  key.append(dst).push_back('\x1f');
  key.append(rel);
  return key;
}

std::string PropertyGraph::add_edge(Edge edge) {
  if (edge.relation.empty()) throw Error(ErrorKind::Validation, "edge relation must be non-empty");
  auto s = node_ids_.find(edge.src);
  auto d = node_ids_.find(edge.dst);
  if (s == node_ids_.end() || d == node_ids_.end()) {
    const std::string& missing = s == node_ids_.end() ? edge.src : edge.dst;
    throw Error(ErrorKind::Integrity, "edge endpoint '" + missing + "' does not exist");
  }
  std::string key = edge_key(edge.src, edge.dst, edge.relation);
  if (!multigraph_ && edge_keys_.contains(key)) {
    throw Error(ErrorKind::DuplicateEdge, "duplicate edge (" + edge.src + ", " + edge.dst +
                                              ", " + edge.relation + ")");
  }
  if (edge.id.empty()) {
    edge.id = fresh_id('e', next_edge_, edge_ids_);
  } else if (edge_ids_.contains(edge.id)) {
    throw Error(ErrorKind::DuplicateId, "duplicate edge id '" + edge.id + "'");
  }
  const std::size_t pos = edges_.size();
  edge_keys_.insert(std::move(key));
  edge_ids_.emplace(edge.id, pos);
  endpoints_.emplace_back(s->second, d->second);
  incident_[s->second].push_back(pos);
  if (d->second != s->second) incident_[d->second].push_back(pos);
  edges_.push_back(std::move(edge));
  return edges_.back().id;
}

std::string PropertyGraph::add_edge(std::string_view src, std::string_view dst,
                                    std::string_view relation, Tier tier, Properties props,
                                    SourceSet prov) {
  return add_edge(Edge{{}, std::string(src), std::string(dst), std::string(relation), tier,
                       std::move(props), prov});
}

const Node& PropertyGraph::node(std::string_view id) const {
  auto it = node_ids_.find(id);
  if (it == node_ids_.end()) {
    throw Error(ErrorKind::Integrity, "no node with id '" + std::string(id) + "'");
  }
  return nodes_[it->second];
}

const Edge& PropertyGraph::edge(std::string_view id) const {
  auto it = edge_ids_.find(id);
  if (it == edge_ids_.end()) {
    throw Error(ErrorKind::Integrity, "no edge with id '" + std::string(id) + "'");
  }
  return edges_[it->second];
}

const Node* PropertyGraph::find_node(std::string_view id) const noexcept {
  auto it = node_ids_.find(id);
  return it == node_ids_.end() ? nullptr : &nodes_[it->second];
}

std::optional<std::size_t> PropertyGraph::node_index(std::string_view id) const noexcept {
  auto it = node_ids_.find(id);
  if (it == node_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PropertyGraph::edge_index(std::string_view id) const noexcept {
  auto it = edge_ids_.find(id);
  if (it == edge_ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t PropertyGraph::other_end(std::size_t edge, std::size_t node) const noexcept {
  const auto& [s, d] = endpoints_[edge];
  return s == node ? d : s;
}

bool PropertyGraph::has_edge(std::string_view src, std::string_view dst,
                             std::string_view relation) const {
  return edge_keys_.contains(edge_key(src, dst, relation));
}

PropertyGraph project_tiers(const PropertyGraph& graph, TierSet tiers) {
  PropertyGraph out(graph.directed(), graph.multigraph());
  for (const Node& n : graph.nodes()) {
    if (tiers.contains(n.tier)) out.add_node(n);
  }
  for (const Edge& e : graph.edges()) {
    if (tiers.contains(e.tier) && out.find_node(e.src) && out.find_node(e.dst)) out.add_edge(e);
  }
  return out;
}

std::vector<std::vector<std::string>> connected_components(const PropertyGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> block(n, n);
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (block[start] != n) continue;
    const std::size_t id = out.size();
    std::vector<std::size_t> members;
    block[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t e : graph.incident(v)) {
        std::size_t w = graph.other_end(e, v);
        if (block[w] == n) {
          block[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    auto& ids = out.emplace_back();
    ids.reserve(members.size());
    for (std::size_t v : members) ids.push_back(graph.nodes()[v].id);
  }
  return out;
}

}  // namespace dtgraph
