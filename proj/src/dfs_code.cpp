#include "dtgraph/dfs_code.hpp"

#include <algorithm>
#include <tuple>

#include "detail/label_graph.hpp"
#include "dtgraph/error.hpp"

namespace dtgraph {

namespace detail {

LabelTable labels_of(const PropertyGraph& graph) {
  std::vector<std::string> vocab;
  for (const Node& n : graph.nodes()) vocab.push_back(n.type);
  for (const Edge& e : graph.edges()) vocab.push_back(e.relation);
  return LabelTable(std::move(vocab));
}

LabelTable labels_of(const DFSCode& code) {
  std::vector<std::string> vocab;
  for (const EdgeTuple& t : code.tuples) {
    vocab.push_back(t.li);
    vocab.push_back(t.le);
    vocab.push_back(t.lj);
  }
  return LabelTable(std::move(vocab));
}

LabeledGraph to_labeled(const PropertyGraph& graph, const LabelTable& table) {
  LabeledGraph g;
  for (const Node& n : graph.nodes()) g.add_vertex(table.id(n.type));
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const std::size_t s = graph.src_index(e);
    const std::size_t d = graph.dst_index(e);
    if (s == d) {
      throw Error(ErrorKind::Validation, "self-loop '" + graph.edges()[e].id + "' cannot be coded");
    }
    g.add_edge(static_cast<int>(s), static_cast<int>(d), table.id(graph.edges()[e].relation));
  }
  return g;
}

Code to_internal(const DFSCode& code, const LabelTable& table) {
  Code out;
  out.reserve(code.size());
  for (const EdgeTuple& t : code.tuples) {
    out.push_back({t.i, t.j, table.id(t.li), table.id(t.le), table.id(t.lj)});
  }
  return out;
}

DFSCode to_public(const Code& code, const LabelTable& table) {
  DFSCode out;
  out.tuples.reserve(code.size());
  for (const Tuple& t : code) {
    out.tuples.push_back({t.i, t.j, table.name(t.li), table.name(t.le), table.name(t.lj)});
  }
  return out;
}

}  // namespace detail

int compare(const EdgeTuple& a, const EdgeTuple& b) noexcept {
  const bool fa = a.forward();
  const bool fb = b.forward();
  if (fa != fb) return fa ? 1 : -1;
  auto key = [fa](const EdgeTuple& t) {
    return fa ? std::tie(t.li, t.le, t.lj) : std::tie(t.le, t.li, t.lj);
  };
  if (fa) {
    if (a.j != b.j) return a.j < b.j ? -1 : 1;
    if (a.i != b.i) return a.i > b.i ? -1 : 1;
  } else {
    if (a.i != b.i) return a.i < b.i ? -1 : 1;
    if (a.j != b.j) return a.j < b.j ? -1 : 1;
  }
  const auto ka = key(a);
  const auto kb = key(b);
  if (ka < kb) return -1;
  if (kb < ka) return 1;
  return 0;
}

int DFSCode::vertex_count() const noexcept {
  int n = 0;
  for (const EdgeTuple& t : tuples) n = std::max({n, t.i + 1, t.j + 1});
  return n;
}

int compare(const DFSCode& a, const DFSCode& b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (int c = compare(a.tuples[k], b.tuples[k]); c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

DFSCode min_dfs_code(const PropertyGraph& graph) {
  const detail::LabelTable table = detail::labels_of(graph);
  const detail::LabeledGraph g = detail::to_labeled(graph, table);
  return detail::to_public(detail::min_code(g).code, table);
}

bool is_min(const DFSCode& code) {
  const detail::LabelTable table = detail::labels_of(code);
  return detail::is_min(detail::to_internal(code, table));
}

PropertyGraph graph_of(const DFSCode& code) {
  const detail::LabelTable table = detail::labels_of(code);
  detail::validate_code(detail::to_internal(code, table));
  // Parallel tuples between the same pair are legal codes, so the pattern
  // graph has to accept repeated relations.
  PropertyGraph g(false, true);
  std::vector<std::string> labels(static_cast<std::size_t>(code.vertex_count()));
  for (const EdgeTuple& t : code.tuples) {
    labels[static_cast<std::size_t>(t.i)] = t.li;
    labels[static_cast<std::size_t>(t.j)] = t.lj;
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    Node n;
    n.id = "v" + std::to_string(k);
    n.name = n.id;
    n.type = labels[k];
    g.add_node(std::move(n));
  }
  for (std::size_t k = 0; k < code.size(); ++k) {
    const EdgeTuple& t = code.tuples[k];
    Edge e;
    e.id = "e" + std::to_string(k);
    e.src = "v" + std::to_string(t.i);
    e.dst = "v" + std::to_string(t.j);
    e.relation = t.le;
    g.add_edge(std::move(e));
  }
  return g;
}

nlohmann::json code_to_json(const DFSCode& code) {
  nlohmann::json out = nlohmann::json::array();
  for (const EdgeTuple& t : code.tuples) out.push_back({t.i, t.j, t.li, t.le, t.lj});
  return out;
}

DFSCode code_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(ErrorKind::Validation, "DFS code must be an array");
  DFSCode code;
  for (const auto& t : doc) {
    if (!t.is_array() || t.size() != 5 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_string() || !t[3].is_string() || !t[4].is_string()) {
      throw Error(ErrorKind::Validation, "DFS tuple must be [i, j, \"li\", \"le\", \"lj\"]");
    }
    code.tuples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<std::string>(),
                           t[3].get<std::string>(), t[4].get<std::string>()});
  }
  return code;
}

std::string to_string(const DFSCode& code) {
  std::string out;
  for (const EdgeTuple& t : code.tuples) {
    out += '(' + std::to_string(t.i) + ',' + std::to_string(t.j) + ',' + t.li + ',' + t.le + ',' +
           t.lj + ')';
  }
  return out;
}

}  // namespace dtgraph
