#include "dtgraph/merge.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "dtgraph/error.hpp"

namespace dtgraph {

void MergePolicy::validate() const {
  std::array<Source, 3> sorted = priority;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<Source, 3>{Source::Plc, Source::Position, Source::Io}) {
    throw Error(ErrorKind::Validation, "merge priority must list plc, position and io exactly once");
  }
}

int MergePolicy::rank(Source s) const noexcept {
  for (int i = 0; i < 3; ++i) {
    if (priority[static_cast<std::size_t>(i)] == s) return i;
  }
  return 3;
}

std::array<Source, 3> MergePolicy::parse_priority(std::string_view text) {
  std::vector<Source> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    items.push_back(source_from_string(fold_term(text.substr(pos, comma - pos))));
    pos = comma + 1;
  }
  if (items.size() != 3) {
    throw Error(ErrorKind::Validation, "merge priority must name three sources");
  }
  MergePolicy p;
  p.priority = {items[0], items[1], items[2]};
  p.validate();
  return p.priority;
}

nlohmann::json MergeReport::to_json() const {
  nlohmann::json conflicts = nlohmann::json::array();
  for (const auto& c : property_conflicts) {
    conflicts.push_back({{"node", c.node}, {"key", c.key}, {"chosen_source", c.chosen_source}});
  }
  nlohmann::json amb = nlohmann::json::array();
  for (const auto& a : ambiguous) amb.push_back({{"node", a.node}, {"types", a.types}});
  return {{"nodes_before", nodes_before},
          {"nodes_after", nodes_after},
          {"edges_before", edges_before},
          {"edges_after", edges_after},
          {"merged_by_label", merged_by_label},
          {"merged_by_semantics", merged_by_semantics},
          {"property_conflicts", conflicts},
          {"ambiguous", amb},
          {"component_count", component_count}};
}

std::string normalize_name(std::string_view name, const MergePolicy& policy) {
  if (policy.trim) {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!name.empty() && is_space(name.front())) name.remove_prefix(1);
    while (!name.empty() && is_space(name.back())) name.remove_suffix(1);
  }
  std::string out(name);
  if (policy.case_fold) {
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

namespace {

bool types_comparable(const CanonicalType& a, const CanonicalType& b, const Taxonomy& tax) {
  return a == b || tax.is_subtype(a, b) || tax.is_subtype(b, a);
}

}  // namespace

bool node_equivalent(const Node& a, const Node& b, const Taxonomy& taxonomy,
                     const MergePolicy& policy) {
  if (normalize_name(a.name, policy) != normalize_name(b.name, policy)) return false;
  return types_comparable(taxonomy.canonical_type(a.type), taxonomy.canonical_type(b.type),
                          taxonomy);
}

namespace {

struct Item {
  const Node* node;
  std::size_t part;
  std::string norm;
  CanonicalType type;
  int rank;  // best source rank of the node, 3 when it has no provenance
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

int best_rank(SourceSet prov, const MergePolicy& policy) {
  int r = 3;
  for (Source s : prov.list()) r = std::min(r, policy.rank(s));
  return r;
}

// Type of an equivalence class: the most specific member when the member
// types form a chain, otherwise their least common ancestor.
CanonicalType class_type(const std::vector<CanonicalType>& types, const Taxonomy& tax) {
  for (const auto& candidate : types) {
    bool below_all = std::all_of(types.begin(), types.end(), [&](const CanonicalType& t) {
      return tax.is_subtype(candidate, t);
    });
    if (below_all) return candidate;
  }
  CanonicalType acc = types.front();
  for (std::size_t i = 1; i < types.size(); ++i) {
    acc = CanonicalType{tax.generalize(acc, types[i]), true};
  }
  return acc;
}

bool is_chain(const std::vector<CanonicalType>& types, const Taxonomy& tax) {
  for (std::size_t i = 0; i < types.size(); ++i) {
    for (std::size_t j = i + 1; j < types.size(); ++j) {
      if (!types_comparable(types[i], types[j], tax)) return false;
    }
  }
  return true;
}

std::vector<CanonicalType> unique_types(const std::vector<std::size_t>& members,
                                        const std::vector<Item>& items) {
  std::vector<CanonicalType> out;
  for (std::size_t m : members) {
    if (std::find(out.begin(), out.end(), items[m].type) == out.end()) out.push_back(items[m].type);
  }
  std::sort(out.begin(), out.end(), [](const CanonicalType& a, const CanonicalType& b) {
    return std::tie(a.name, a.resolved) < std::tie(b.name, b.resolved);
  });
  return out;
}

// Pairwise label-equivalence tests inside each name group.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> label_pairs(
    const std::vector<std::vector<std::size_t>>& groups, const std::vector<Item>& items,
    const Taxonomy& tax, bool parallel) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(groups.size());
  const auto n = static_cast<std::ptrdiff_t>(groups.size());
  auto work = [&](std::ptrdiff_t g) {
    const auto& group = groups[static_cast<std::size_t>(g)];
    auto& pairs = out[static_cast<std::size_t>(g)];
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        if (types_comparable(items[group[i]].type, items[group[j]].type, tax)) {
          pairs.emplace_back(group[i], group[j]);
        }
      }
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t g = 0; g < n; ++g) work(g);
  } else {
    for (std::ptrdiff_t g = 0; g < n; ++g) work(g);
  }
  return out;
}

bool value_less(const PropertyValue& a, const PropertyValue& b) { return a < b; }

template <class Element>
struct Pick {
  const Element* element;
  int rank;
};

// Chooses per key the value of the highest-priority element; ties go to the
// smallest value so the outcome does not depend on input order.
template <class Element>
Properties resolve_properties(const std::vector<Pick<Element>>& members, const MergePolicy& policy,
                              const std::string& element_id,
                              std::vector<PropertyConflict>* conflicts) {
  std::map<std::string, std::vector<std::pair<int, const PropertyValue*>>, std::less<>> candidates;
  std::map<std::string, std::vector<SourceSet>, std::less<>> provs;
  for (const auto& m : members) {
    for (const auto& [key, value] : m.element->props) {
      candidates[key].emplace_back(m.rank, &value);
      provs[key].push_back(m.element->prov);
    }
  }
  Properties out;
  for (auto& [key, values] : candidates) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i].first < values[best].first ||
          (values[i].first == values[best].first && value_less(*values[i].second, *values[best].second))) {
        best = i;
      }
    }
    out.emplace(key, *values[best].second);
    bool differs = std::any_of(values.begin(), values.end(), [&](const auto& v) {
      return *v.second != *values[best].second;
    });
    if (differs && conflicts) {
      std::string chosen = "none";
      if (values[best].first < 3) {
        chosen = std::string(to_string(policy.priority[static_cast<std::size_t>(values[best].first)]));
      }
      conflicts->push_back({element_id, key, chosen});
    }
  }
  return out;
}

MergeResult merge_impl(std::span<const PropertyGraph> parts, const Taxonomy& tax,
                       const MergePolicy& policy, bool parallel) {
  policy.validate();
  MergeResult result;
  MergeReport& report = result.report;
  const bool directed = parts.empty() ? false : parts.front().directed();
  for (const auto& p : parts) {
    if (p.directed() != directed) {
      throw Error(ErrorKind::Validation, "cannot merge directed and undirected graphs");
    }
    report.nodes_before += p.node_count();
    report.edges_before += p.edge_count();
  }

  std::vector<Item> items;
  std::vector<std::size_t> part_offset;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    part_offset.push_back(items.size());
    for (const Node& n : parts[p].nodes()) {
      items.push_back({&n, p, normalize_name(n.name, policy), tax.canonical_type(n.type),
                       best_rank(n.prov, policy)});
    }
  }

  std::map<std::string, std::vector<std::size_t>> by_name;
  for (std::size_t i = 0; i < items.size(); ++i) by_name[items[i].norm].push_back(i);
  std::vector<std::vector<std::size_t>> groups;
  groups.reserve(by_name.size());
  for (auto& [name, members] : by_name) groups.push_back(std::move(members));

  UnionFind uf(items.size());
  for (const auto& pairs : label_pairs(groups, items, tax, parallel)) {
    for (auto [a, b] : pairs) uf.unite(a, b);
  }

  auto classes_of = [&](const std::vector<std::size_t>& group) {
    std::map<std::size_t, std::vector<std::size_t>> cls;
    for (std::size_t m : group) cls[uf.find(m)].push_back(m);
    return cls;
  };

  std::size_t label_classes = 0;
  for (const auto& group : groups) label_classes += classes_of(group).size();

  // Ambiguity is judged on label classes, before the semantic pass.
  std::vector<std::pair<std::size_t, std::vector<std::string>>> ambiguous_roots;
  for (const auto& group : groups) {
    for (const auto& [root, members] : classes_of(group)) {
      auto types = unique_types(members, items);
      if (!is_chain(types, tax)) {
        std::vector<std::string> names;
        for (const auto& t : types) names.push_back(t.name);
        ambiguous_roots.emplace_back(root, std::move(names));
      }
    }
  }

  if (policy.semantic_merge) {
    for (const auto& group : groups) {
      auto cls = classes_of(group);
      std::vector<std::pair<std::size_t, CanonicalType>> reps;
      for (const auto& [root, members] : cls) reps.emplace_back(root, class_type(unique_types(members, items), tax));
      for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
          if (tax.generalize(reps[i].second, reps[j].second) != kRootType) {
            uf.unite(reps[i].first, reps[j].first);
          }
        }
      }
    }
  }

  // Final classes, ordered by (normalized name, type) for deterministic ids.
  struct Class {
    std::string norm;
    CanonicalType type;
    std::vector<std::size_t> members;
    std::string key_tail;
  };
  std::vector<Class> classes;
  for (const auto& group : groups) {
    for (auto& [root, members] : classes_of(group)) {
      Class c;
      c.norm = items[members.front()].norm;
      c.type = class_type(unique_types(members, items), tax);
      // Tie-break on member content for classes that share name and type.
      std::vector<std::string> names;
      for (std::size_t m : members) names.push_back(items[m].node->name + '\x1f' + items[m].node->type);
      std::sort(names.begin(), names.end());
      for (const auto& s : names) c.key_tail += s + '\x1e';
      c.members = std::move(members);
      classes.push_back(std::move(c));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) {
    return std::tie(a.norm, a.type.name, a.type.resolved, a.key_tail) <
           std::tie(b.norm, b.type.name, b.type.resolved, b.key_tail);
  });
  std::vector<std::size_t> class_of_item(items.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t m : classes[c].members) class_of_item[m] = c;
  }

  PropertyGraph& out = result.graph = PropertyGraph(directed);
  std::vector<std::string> class_id(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Class& cls = classes[c];
    class_id[c] = "n" + std::to_string(c);
    std::vector<Pick<Node>> picks;
    Node merged;
    merged.id = class_id[c];
    merged.type = cls.type.name;
    merged.tier = Tier::Environment;
    const Item* name_source = nullptr;
    for (std::size_t m : cls.members) {
      const Item& it = items[m];
      picks.push_back({it.node, it.rank});
      merged.prov.insert(it.node->prov);
      merged.tier = std::min(merged.tier, it.node->tier);
      if (!name_source || it.rank < name_source->rank ||
          (it.rank == name_source->rank && it.node->name < name_source->node->name)) {
        name_source = &it;
      }
    }
    merged.name = name_source->node->name;
    merged.props = resolve_properties(picks, policy, merged.id, &report.property_conflicts);
    out.add_node(std::move(merged));
  }

  for (const auto& [root, types] : ambiguous_roots) {
    report.ambiguous.push_back({class_id[class_of_item[root]], types});
  }

  // Edges keyed by class endpoints; undirected keys are order-normalized.
  struct EdgeGroup {
    std::vector<Pick<Edge>> members;
    std::vector<std::pair<std::size_t, std::size_t>> ends;
  };
  std::map<std::tuple<std::size_t, std::size_t, std::string>, EdgeGroup> edge_groups;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = parts[p];
    for (std::size_t e = 0; e < part.edge_count(); ++e) {
      const Edge& edge = part.edges()[e];
      std::size_t s = class_of_item[part_offset[p] + part.src_index(e)];
      std::size_t d = class_of_item[part_offset[p] + part.dst_index(e)];
      auto key = directed ? std::tuple{s, d, edge.relation}
                          : std::tuple{std::min(s, d), std::max(s, d), edge.relation};
      auto& grp = edge_groups[key];
      grp.members.push_back({&edge, best_rank(edge.prov, policy)});
      grp.ends.emplace_back(s, d);
    }
  }
  std::size_t edge_counter = 0;
  for (auto& [key, grp] : edge_groups) {
    // Orientation from the highest-priority member, then the smaller endpoints.
    std::size_t best = 0;
    for (std::size_t i = 1; i < grp.members.size(); ++i) {
      if (std::tie(grp.members[i].rank, grp.ends[i]) < std::tie(grp.members[best].rank, grp.ends[best])) {
        best = i;
      }
    }
    Edge merged;
    merged.id = "e" + std::to_string(edge_counter++);
    merged.src = class_id[grp.ends[best].first];
    merged.dst = class_id[grp.ends[best].second];
    merged.relation = std::get<2>(key);
    merged.tier = Tier::Environment;
    for (const auto& m : grp.members) {
      merged.prov.insert(m.element->prov);
      merged.tier = std::min(merged.tier, m.element->tier);
    }
    merged.props = resolve_properties<Edge>(grp.members, policy, merged.id, nullptr);
    out.add_edge(std::move(merged));
  }

  report.nodes_after = out.node_count();
  report.edges_after = out.edge_count();
  report.merged_by_label = report.nodes_before - label_classes;
  report.merged_by_semantics = label_classes - classes.size();
  report.component_count = connected_components(out).size();
  return result;
}

}  // namespace

MergeResult merge_graphs(std::span<const PropertyGraph> parts, const Taxonomy& taxonomy,
                         const MergePolicy& policy) {
  return merge_impl(parts, taxonomy, policy, true);
}

MergeResult merge_graphs_serial(std::span<const PropertyGraph> parts, const Taxonomy& taxonomy,
                                const MergePolicy& policy) {
  return merge_impl(parts, taxonomy, policy, false);
}

}  // namespace dtgraph
