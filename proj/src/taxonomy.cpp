#include "dtgraph/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "dtgraph/error.hpp"
#include "dtgraph/graph_io.hpp"

namespace dtgraph {

std::string fold_term(std::string_view term) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0;
  std::size_t e = term.size();
  while (b < e && is_space(static_cast<unsigned char>(term[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(term[e - 1]))) --e;
  std::string out(term.substr(b, e - b));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Taxonomy::Taxonomy() {
  names_.emplace_back(kRootType);
  parent_.push_back(0);
  depth_.push_back(0);
  by_name_.emplace(std::string(kRootType), 0);
  by_folded_.emplace(fold_term(kRootType), 0);
}

Taxonomy Taxonomy::from_entries(const std::vector<TypeEntry>& entries) {
  Taxonomy t;
  for (const auto& entry : entries) {
    if (entry.name.empty()) throw Error(ErrorKind::Validation, "type entry with empty name");
    const std::string folded = fold_term(entry.name);
    if (folded == fold_term(kRootType)) {
      throw Error(ErrorKind::DuplicateType, "type '" + entry.name + "': the root 'Thing' is implied");
    }
    if (t.by_folded_.contains(folded)) {
      throw Error(ErrorKind::DuplicateType, "type '" + entry.name + "' declared twice");
    }
    const std::size_t idx = t.names_.size();
    t.names_.push_back(entry.name);
    t.by_name_.emplace(entry.name, idx);
    t.by_folded_.emplace(folded, idx);
  }

  t.parent_.resize(t.names_.size(), 0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& entry = entries[i];
    const std::string parent = entry.parent.empty() ? std::string(kRootType) : entry.parent;
    auto it = t.by_name_.find(parent);
    if (it == t.by_name_.end()) {
      throw Error(ErrorKind::UnknownParent,
                  "type '" + entry.name + "' has unknown parent '" + parent + "'");
    }
    t.parent_[i + 1] = it->second;
  }

  t.depth_.assign(t.names_.size(), 0);
  std::vector<int> state(t.names_.size(), 0);  // 0 new, 1 on stack, 2 done
  state[0] = 2;
  for (std::size_t i = 1; i < t.names_.size(); ++i) {
    std::vector<std::size_t> chain;
    std::size_t v = i;
    while (state[v] == 0) {
      state[v] = 1;
      chain.push_back(v);
      v = t.parent_[v];
    }
    if (state[v] == 1) {
      throw Error(ErrorKind::TaxonomyCycle, "type '" + t.names_[v] + "' is its own ancestor");
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      t.depth_[*it] = t.depth_[t.parent_[*it]] + 1;
      state[*it] = 2;
    }
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const auto& alias : entries[i].aliases) {
      const std::string folded = fold_term(alias);
      if (folded.empty()) {
        throw Error(ErrorKind::AliasConflict, "type '" + entries[i].name + "' has an empty alias");
      }
      auto it = t.by_folded_.find(folded);
      if (it != t.by_folded_.end() && it->second != i + 1) {
        throw Error(ErrorKind::AliasConflict, "alias '" + alias + "' of type '" + entries[i].name +
                                                  "' already denotes '" + t.names_[it->second] + "'");
      }
      t.by_folded_.emplace(folded, i + 1);
    }
  }
  return t;
}

Taxonomy Taxonomy::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("types") || !doc["types"].is_array()) {
    throw Error(ErrorKind::Validation, "taxonomy document needs a \"types\" array");
  }
  std::vector<TypeEntry> entries;
  for (const auto& item : doc["types"]) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
      throw Error(ErrorKind::Validation, "taxonomy entry needs a string \"name\"");
    }
    TypeEntry e;
    e.name = item["name"].get<std::string>();
    if (auto p = item.find("parent"); p != item.end()) {
      if (!p->is_string()) throw Error(ErrorKind::Validation, "type '" + e.name + "': parent must be a string");
      e.parent = p->get<std::string>();
    }
    if (auto a = item.find("aliases"); a != item.end()) {
      if (!a->is_array()) throw Error(ErrorKind::Validation, "type '" + e.name + "': aliases must be an array");
      for (const auto& alias : *a) {
        if (!alias.is_string()) {
          throw Error(ErrorKind::Validation, "type '" + e.name + "': aliases must be strings");
        }
        e.aliases.push_back(alias.get<std::string>());
      }
    }
    entries.push_back(std::move(e));
  }
  return from_entries(entries);
}

Taxonomy Taxonomy::load(const std::filesystem::path& path) {
  auto doc = read_json_file(path);
  try {
    return from_json(doc);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

bool Taxonomy::contains(std::string_view canonical_name) const noexcept {
  return by_name_.contains(std::string(canonical_name));
}

CanonicalType Taxonomy::canonical_type(std::string_view term) const {
  auto it = by_folded_.find(fold_term(term));
  if (it != by_folded_.end()) return {names_[it->second], true};
  return {std::string(term), false};
}

std::size_t Taxonomy::index_of(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) {
    throw Error(ErrorKind::UnknownType, "unknown type '" + std::string(name) + "'");
  }
  return it->second;
}

std::size_t Taxonomy::lca(std::size_t a, std::size_t b) const {
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

bool Taxonomy::is_subtype(std::string_view a, std::string_view b) const {
  std::size_t ia = index_of(a);
  const std::size_t ib = index_of(b);
  while (depth_[ia] > depth_[ib]) ia = parent_[ia];
  return ia == ib;
}

bool Taxonomy::is_subtype(const CanonicalType& a, const CanonicalType& b) const {
  if (a.resolved && b.resolved) return is_subtype(a.name, b.name);
  if (b.resolved) {
    index_of(b.name);
    return b.name == kRootType;
  }
  if (a.resolved) index_of(a.name);
  return !a.resolved && a.name == b.name;
}

std::string Taxonomy::generalize(std::string_view a, std::string_view b) const {
  return names_[lca(index_of(a), index_of(b))];
}

std::string Taxonomy::generalize(const CanonicalType& a, const CanonicalType& b) const {
  if (a.resolved && b.resolved) return generalize(a.name, b.name);
  if (a.resolved) index_of(a.name);
  if (b.resolved) index_of(b.name);
  if (a == b) return a.name;
  return std::string(kRootType);
}

std::vector<std::string> Taxonomy::ancestors(const CanonicalType& t) const {
  if (!t.resolved) return {std::string(kRootType)};
  std::vector<std::string> out;
  std::size_t i = index_of(t.name);
  while (i != 0) {
    i = parent_[i];
    out.push_back(names_[i]);
  }
  return out;
}

const std::string& Taxonomy::parent_of(std::string_view canonical_name) const {
  return names_[parent_[index_of(canonical_name)]];
}

std::size_t Taxonomy::depth(std::string_view canonical_name) const {
  return depth_[index_of(canonical_name)];
}

}  // namespace dtgraph
