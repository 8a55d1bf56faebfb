#include "dtgraph/templates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "dtgraph/error.hpp"
#include "dtgraph/graph_io.hpp"

namespace dtgraph {

void TemplateParams::validate() const {
  if (max_templates < 1) throw Error(ErrorKind::Validation, "max_templates must be at least 1");
  if (mode == MatchMode::Generalized && taxonomy == nullptr) {
    throw Error(ErrorKind::Validation, "generalized matching needs a taxonomy");
  }
}

std::size_t score_pattern(const Pattern& pattern, std::size_t disjoint_instances) {
  if (disjoint_instances < 2) return 0;
  return (pattern.node_count() + pattern.edge_count()) * (disjoint_instances - 1);
}

std::size_t score_pattern(const Pattern& pattern) {
  return score_pattern(pattern, select_instances(pattern, pattern.embeddings).size());
}

std::vector<Embedding> select_instances(const Pattern&, std::vector<Embedding> embeddings) {
  std::sort(embeddings.begin(), embeddings.end());
  std::set<std::string> taken;
  std::vector<Embedding> out;
  for (auto& e : embeddings) {
    const bool free = std::none_of(e.nodes.begin(), e.nodes.end(),
                                   [&](const std::string& id) { return taken.contains(id); });
    if (!free) continue;
    taken.insert(e.nodes.begin(), e.nodes.end());
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

constexpr std::string_view kTemplateKey = "template";
constexpr std::string_view kPortKey = "port";
constexpr std::string_view kSrcPortKey = "src_port";
constexpr std::string_view kDstPortKey = "dst_port";

std::string instance_type(const std::string& template_id) { return "template:" + template_id; }

PropertyGraph copy_as(const PropertyGraph& g, bool multigraph) {
  PropertyGraph out(g.directed(), multigraph);
  for (const Node& n : g.nodes()) out.add_node(n);
  for (const Edge& e : g.edges()) out.add_edge(e);
  return out;
}

void check_stored_embeddings(const std::vector<Pattern>& patterns, const PropertyGraph& graph,
                             const TemplateParams& params) {
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    const Pattern& p = patterns[k];
    if (p.embeddings.empty()) continue;
    const auto actual = embeddings(p.graph, graph, params.mode, params.taxonomy);
    for (const Embedding& e : p.embeddings) {
      if (!std::binary_search(actual.begin(), actual.end(), e)) {
        throw Error(ErrorKind::Validation, "pattern " + std::to_string(k) + " (" +
                                               to_string(p.code) +
                                               ") has an embedding that does not exist in the graph");
      }
    }
  }
}

struct Candidate {
  std::size_t score = 0;
  std::vector<Embedding> instances;
};

// Replaces the chosen instances in `tg.residual` by instance nodes.
void apply_template(TemplatizedGraph& tg, const Pattern& pattern, std::vector<Embedding> instances) {
  const PropertyGraph& old = tg.residual;
  Template t;
  t.id = "T" + std::to_string(tg.templates.size());
  t.code = pattern.code;
  t.pattern = pattern.graph;
  t.instances = std::move(instances);

  // node position -> (instance, pattern node)
  std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> member_of;
  for (std::size_t i = 0; i < t.instances.size(); ++i) {
    InstanceRecord rec;
    rec.node = t.id + "." + std::to_string(i);
    if (old.find_node(rec.node)) {
      throw Error(ErrorKind::DuplicateId, "instance id '" + rec.node + "' is already in use");
    }
    for (std::size_t k = 0; k < t.instances[i].nodes.size(); ++k) {
      const std::size_t pos = *old.node_index(t.instances[i].nodes[k]);
      member_of.emplace(pos, std::make_pair(i, k));
      rec.members.push_back(old.nodes()[pos]);
    }
    t.records.push_back(std::move(rec));
  }

  PropertyGraph next(old.directed(), true);
  std::vector<char> emitted(t.instances.size(), 0);
  for (std::size_t v = 0; v < old.node_count(); ++v) {
    auto it = member_of.find(v);
    if (it == member_of.end()) {
      next.add_node(old.nodes()[v]);
      continue;
    }
    const std::size_t i = it->second.first;
    if (emitted[i]) continue;
    emitted[i] = 1;
    const InstanceRecord& rec = t.records[i];
    Node inst;
    inst.id = rec.node;
    inst.name = t.id + "#" + std::to_string(i);
    inst.type = instance_type(t.id);
    inst.tier = Tier::Environment;
    for (const Node& m : rec.members) {
      if (to_int(m.tier) < to_int(inst.tier)) inst.tier = m.tier;
      inst.prov.insert(m.prov);
    }
    inst.props.emplace(std::string(kTemplateKey), t.id);
    next.add_node(std::move(inst));
  }

  std::set<std::size_t> ports;
  for (std::size_t e = 0; e < old.edge_count(); ++e) {
    const Edge& edge = old.edges()[e];
    auto s = member_of.find(old.src_index(e));
    auto d = member_of.find(old.dst_index(e));
    const bool sm = s != member_of.end();
    const bool dm = d != member_of.end();
    if (!sm && !dm) {
      next.add_edge(edge);
      continue;
    }
    if (sm && dm && s->second.first == d->second.first) {
      t.records[s->second.first].internal.push_back(edge);
      continue;
    }
    tg.rewired[edge.id].push_back(edge.props);
    Edge moved = edge;
    if (sm && dm) {
      moved.src = t.records[s->second.first].node;
      moved.dst = t.records[d->second.first].node;
      moved.props.insert_or_assign(std::string(kSrcPortKey), static_cast<double>(s->second.second));
      moved.props.insert_or_assign(std::string(kDstPortKey), static_cast<double>(d->second.second));
      ports.insert(s->second.second);
      ports.insert(d->second.second);
    } else if (sm) {
      moved.src = t.records[s->second.first].node;
      moved.props.insert_or_assign(std::string(kPortKey), static_cast<double>(s->second.second));
      ports.insert(s->second.second);
    } else {
      moved.dst = t.records[d->second.first].node;
      moved.props.insert_or_assign(std::string(kPortKey), static_cast<double>(d->second.second));
      ports.insert(d->second.second);
    }
    next.add_edge(std::move(moved));
  }
  t.ports.assign(ports.begin(), ports.end());
  tg.residual = std::move(next);
  tg.templates.push_back(std::move(t));
}

TemplatizedGraph start(const PropertyGraph& abox) {
  TemplatizedGraph base;
  base.base_multigraph = abox.multigraph();
  base.residual = copy_as(abox, true);
  return base;
}

TemplatizedGraph run_rounds(TemplatizedGraph tg, const std::vector<Pattern>& patterns,
                            const TemplateParams& params, bool parallel) {
  params.validate();
  check_stored_embeddings(patterns, tg.residual, params);

  std::vector<char> active(patterns.size(), 1);
  for (std::size_t made = 0; made < params.max_templates; ++made) {
    std::vector<Candidate> scored(patterns.size());
    const auto n = static_cast<std::ptrdiff_t>(patterns.size());
    const PropertyGraph& residual = tg.residual;
    // Instance nodes get fresh labels, so embedding counts never grow
    // between rounds and a candidate that drops below two stays out.
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      if (!active[i]) continue;
      auto found = embeddings(patterns[i].graph, residual, params.mode, params.taxonomy);
      if (found.size() < 2) {
        active[i] = 0;
        continue;
      }
      scored[i].instances = select_instances(patterns[i], std::move(found));
      scored[i].score = score_pattern(patterns[i], scored[i].instances.size());
    }

    std::size_t best = patterns.size();
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (!active[i] || scored[i].score == 0) continue;
      if (best == patterns.size() || scored[i].score > scored[best].score ||
          (scored[i].score == scored[best].score && compare(patterns[i].code, patterns[best].code) < 0)) {
        best = i;
      }
    }
    if (best == patterns.size()) break;
    active[best] = 0;
    apply_template(tg, patterns[best], std::move(scored[best].instances));
  }
  return tg;
}

}  // namespace

TemplatizedGraph templatize(const PropertyGraph& abox, const std::vector<Pattern>& patterns,
                            const TemplateParams& params) {
  return run_rounds(start(abox), patterns, params, true);
}

TemplatizedGraph templatize(TemplatizedGraph base, const std::vector<Pattern>& patterns,
                            const TemplateParams& params) {
  return run_rounds(std::move(base), patterns, params, true);
}

TemplatizedGraph templatize_serial(const PropertyGraph& abox, const std::vector<Pattern>& patterns,
                                   const TemplateParams& params) {
  return run_rounds(start(abox), patterns, params, false);
}

namespace {

std::size_t port_value(const Edge& e, std::string_view key, std::size_t limit) {
  auto it = e.props.find(key);
  if (it == e.props.end() || !std::holds_alternative<double>(it->second)) {
    throw Error(ErrorKind::Integrity, "edge '" + e.id + "' lacks its " + std::string(key) + " annotation");
  }
  const double v = std::get<double>(it->second);
  if (!(v >= 0.0) || v != std::floor(v) || v >= static_cast<double>(limit)) {
    throw Error(ErrorKind::Integrity, "edge '" + e.id + "' has invalid " + std::string(key) + " " +
                                          to_string(it->second));
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

PropertyGraph expand(const TemplatizedGraph& tg) {
  std::unordered_map<std::string, std::size_t> template_index;
  for (std::size_t t = 0; t < tg.templates.size(); ++t) template_index.emplace(tg.templates[t].id, t);
  for (const Node& n : tg.residual.nodes()) {
    auto it = n.props.find(kTemplateKey);
    if (it == n.props.end()) continue;
    const std::string ref = to_string(it->second);
    if (!template_index.contains(ref)) {
      throw Error(ErrorKind::Integrity, "node '" + n.id + "' references unknown template '" + ref + "'");
    }
  }

  std::vector<Node> nodes(tg.residual.nodes().begin(), tg.residual.nodes().end());
  std::vector<Edge> edges(tg.residual.edges().begin(), tg.residual.edges().end());
  auto history = tg.rewired;

  for (auto t = tg.templates.rbegin(); t != tg.templates.rend(); ++t) {
    std::unordered_map<std::string, std::size_t> record_of;
    for (std::size_t r = 0; r < t->records.size(); ++r) {
      const InstanceRecord& rec = t->records[r];
      if (rec.members.size() != t->pattern.node_count()) {
        throw Error(ErrorKind::Integrity, "instance '" + rec.node + "' of " + t->id +
                                              " does not match the template size");
      }
      record_of.emplace(rec.node, r);
    }

    std::vector<Node> next_nodes;
    std::size_t seen = 0;
    for (Node& n : nodes) {
      auto it = record_of.find(n.id);
      if (it == record_of.end()) {
        next_nodes.push_back(std::move(n));
        continue;
      }
      ++seen;
      const auto& members = t->records[it->second].members;
      next_nodes.insert(next_nodes.end(), members.begin(), members.end());
    }
    if (seen != record_of.size()) {
      throw Error(ErrorKind::Integrity, "an instance node of " + t->id + " is missing");
    }

    const std::size_t size = t->pattern.node_count();
    std::vector<Edge> next_edges;
    for (Edge& e : edges) {
      auto s = record_of.find(e.src);
      auto d = record_of.find(e.dst);
      const bool sm = s != record_of.end();
      const bool dm = d != record_of.end();
      if (!sm && !dm) {
        next_edges.push_back(std::move(e));
        continue;
      }
      if (sm && dm) {
        e.src = t->records[s->second].members[port_value(e, kSrcPortKey, size)].id;
        e.dst = t->records[d->second].members[port_value(e, kDstPortKey, size)].id;
      } else if (sm) {
        e.src = t->records[s->second].members[port_value(e, kPortKey, size)].id;
      } else {
        e.dst = t->records[d->second].members[port_value(e, kPortKey, size)].id;
      }
      auto h = history.find(e.id);
      if (h == history.end() || h->second.empty()) {
        throw Error(ErrorKind::Integrity, "edge '" + e.id + "' has no rewrite history");
      }
      e.props = std::move(h->second.back());
      h->second.pop_back();
      next_edges.push_back(std::move(e));
    }
    for (const InstanceRecord& rec : t->records) {
      next_edges.insert(next_edges.end(), rec.internal.begin(), rec.internal.end());
    }
    nodes = std::move(next_nodes);
    edges = std::move(next_edges);
  }

  PropertyGraph out(tg.residual.directed(), tg.base_multigraph);
  for (Node& n : nodes) out.add_node(std::move(n));
  for (Edge& e : edges) out.add_edge(std::move(e));
  return out;
}

nlohmann::json CompressionStats::to_json() const {
  return {{"nodes_before", nodes_before},   {"edges_before", edges_before},
          {"nodes_after", nodes_after},     {"edges_after", edges_after},
          {"template_count", template_count}, {"template_elements", template_elements},
          {"reduction_ratio", reduction_ratio}};
}

namespace {

double reduction(std::size_t before, std::size_t after) {
  if (before == 0) return 0.0;
  return 1.0 - static_cast<double>(after) / static_cast<double>(before);
}

}  // namespace

CompressionStats compression_stats(const PropertyGraph& before, const PropertyGraph& after) {
  CompressionStats s;
  s.nodes_before = before.node_count();
  s.edges_before = before.edge_count();
  s.nodes_after = after.node_count();
  s.edges_after = after.edge_count();
  s.reduction_ratio = reduction(s.nodes_before + s.edges_before, s.nodes_after + s.edges_after);
  return s;
}

CompressionStats compression_stats(const PropertyGraph& before, const TemplatizedGraph& after) {
  CompressionStats s = compression_stats(before, after.residual);
  s.template_count = after.templates.size();
  for (const Template& t : after.templates) {
    s.template_elements += t.pattern.node_count() + t.pattern.edge_count();
  }
  s.reduction_ratio = reduction(s.nodes_before + s.edges_before,
                                s.nodes_after + s.edges_after + s.template_elements);
  return s;
}

nlohmann::json library_to_json(const TemplatizedGraph& tg) {
  nlohmann::json templates = nlohmann::json::array();
  for (const Template& t : tg.templates) {
    nlohmann::json instances = nlohmann::json::array();
    for (const Embedding& e : t.instances) instances.push_back(e.nodes);
    nlohmann::json records = nlohmann::json::array();
    for (const InstanceRecord& r : t.records) {
      nlohmann::json members = nlohmann::json::array();
      for (const Node& n : r.members) members.push_back(node_to_json(n));
      nlohmann::json internal = nlohmann::json::array();
      for (const Edge& e : r.internal) internal.push_back(edge_to_json(e));
      records.push_back({{"node", r.node}, {"members", std::move(members)}, {"internal", std::move(internal)}});
    }
    templates.push_back({{"id", t.id},
                         {"code", code_to_json(t.code)},
                         {"ports", t.ports},
                         {"instances", std::move(instances)},
                         {"records", std::move(records)}});
  }
  nlohmann::json rewired = nlohmann::json::object();
  for (const auto& [id, stack] : tg.rewired) {
    if (stack.empty()) continue;
    nlohmann::json list = nlohmann::json::array();
    for (const Properties& p : stack) list.push_back(properties_to_json(p));
    rewired[id] = std::move(list);
  }
  return {{"templates", std::move(templates)},
          {"residual", graph_to_json(tg.residual)},
          {"rewired", std::move(rewired)},
          {"base_multigraph", tg.base_multigraph}};
}

TemplatizedGraph library_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("templates") || !doc.contains("residual")) {
    throw Error(ErrorKind::Validation, "template library needs \"templates\" and \"residual\"");
  }
  TemplatizedGraph tg;
  try {
    tg.residual = graph_from_json(doc.at("residual"));
    tg.base_multigraph = doc.value("base_multigraph", false);
    const nlohmann::json rewired = doc.value("rewired", nlohmann::json::object());
    for (const auto& [id, list] : rewired.items()) {
      auto& stack = tg.rewired[id];
      for (const auto& p : list) stack.push_back(properties_from_json(p));
    }
    for (const auto& item : doc.at("templates")) {
      Template t;
      t.id = item.at("id").get<std::string>();
      t.code = code_from_json(item.at("code"));
      t.pattern = graph_of(t.code);
      t.ports = item.value("ports", std::vector<std::size_t>{});
      for (const auto& inst : item.value("instances", nlohmann::json::array())) {
        t.instances.push_back({inst.get<std::vector<std::string>>()});
      }
      for (const auto& r : item.value("records", nlohmann::json::array())) {
        InstanceRecord rec;
        rec.node = r.at("node").get<std::string>();
        for (const auto& n : r.at("members")) rec.members.push_back(node_from_json(n));
        for (const auto& e : r.at("internal")) rec.internal.push_back(edge_from_json(e));
        t.records.push_back(std::move(rec));
      }
      if (t.records.size() != t.instances.size()) {
        throw Error(ErrorKind::Validation, "template " + t.id + " has " +
                                               std::to_string(t.instances.size()) + " instances but " +
                                               std::to_string(t.records.size()) + " records");
      }
      tg.templates.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("bad template library: ") + e.what());
  }
  return tg;
}

std::vector<std::string> distinct_colors(std::size_t count) {
  // Golden-ratio hue steps never repeat and stay well apart for small counts.
  std::vector<std::string> out;
  double hue = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f 0.550 0.950", hue);
    out.emplace_back(buf);
    hue = std::fmod(hue + 0.618033988749895, 1.0);
  }
  return out;
}

std::string instances_to_dot(const TemplatizedGraph& tg) {
  std::size_t total = 0;
  for (const Template& t : tg.templates) total += t.records.size();
  const auto palette = distinct_colors(total);
  std::map<std::string, std::string> colors;
  std::size_t k = 0;
  for (const Template& t : tg.templates) {
    for (const InstanceRecord& r : t.records) {
      for (const Node& m : r.members) colors[m.id] = palette[k];
      ++k;
    }
  }
  return to_dot(expand(tg), colors);
}

}  // namespace dtgraph
