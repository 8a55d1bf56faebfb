#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace dtgraph {

inline constexpr std::string_view kRootType = "Thing";

/// Result of resolving a free-form type term. Unresolved terms are kept
/// verbatim and behave like direct children of the root.
struct CanonicalType {
  std::string name;
  bool resolved = false;

  friend bool operator==(const CanonicalType&, const CanonicalType&) = default;
};

struct TypeEntry {
  std::string name;
  std::string parent;
  std::vector<std::string> aliases;
};

// Type tree rooted at "Thing" plus an alias table. Immutable once loaded.
class Taxonomy {
 public:
  /// A taxonomy that only knows the root.
  Taxonomy();

  /// Validates and builds the tree. Throws UnknownParent, TaxonomyCycle,
  /// DuplicateType or AliasConflict naming the offending entry.
  static Taxonomy from_entries(const std::vector<TypeEntry>& entries);
  static Taxonomy from_json(const nlohmann::json& doc);
  static Taxonomy load(const std::filesystem::path& path);

  /// Number of types including the root.
  std::size_t size() const noexcept { return names_.size(); }
  bool contains(std::string_view canonical_name) const noexcept;

  /// Case-folded, trimmed lookup through canonical names and aliases.
  CanonicalType canonical_type(std::string_view term) const;

  /// a == b or a is a descendant of b. Throws UnknownType for names that are
  /// not canonical types of this taxonomy.
  bool is_subtype(std::string_view a, std::string_view b) const;
  bool is_subtype(const CanonicalType& a, const CanonicalType& b) const;

  /// Least common ancestor. Throws UnknownType like is_subtype.
  std::string generalize(std::string_view a, std::string_view b) const;
  std::string generalize(const CanonicalType& a, const CanonicalType& b) const;

  /// Proper ancestors from the parent up to and including the root.
  std::vector<std::string> ancestors(const CanonicalType& t) const;

  const std::string& parent_of(std::string_view canonical_name) const;
  std::size_t depth(std::string_view canonical_name) const;

 private:
  std::size_t index_of(std::string_view name) const;
  std::size_t lca(std::size_t a, std::size_t b) const;

  std::vector<std::string> names_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> depth_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::unordered_map<std::string, std::size_t> by_folded_;  // folded names and aliases
};

/// Trims ASCII whitespace and lowercases ASCII letters.
std::string fold_term(std::string_view term);

}  // namespace dtgraph
