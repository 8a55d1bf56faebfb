#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace dtgraph {

/// Abstraction level of a node or relation in the context tier model.
enum class Tier : std::uint8_t {
  DomainInternal = 1,
  InterDomain = 2,
  SystemOfSystems = 3,
  Environment = 4,
};

/// Throws Validation unless 1 <= level <= 4.
Tier tier_from_int(int level);
constexpr int to_int(Tier t) noexcept { return static_cast<int>(t); }

/// Set of tiers, used for projections. Parses "1,2" style lists.
class TierSet {
 public:
  constexpr TierSet() = default;
  TierSet(std::initializer_list<Tier> tiers) {
    for (Tier t : tiers) insert(t);
  }

  static constexpr TierSet all() noexcept {
    TierSet s;
    s.bits_ = 0x0f;
    return s;
  }
  static TierSet parse(std::string_view text);

  void insert(Tier t) noexcept { bits_ |= bit(t); }
  bool contains(Tier t) const noexcept { return (bits_ & bit(t)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  std::vector<int> levels() const;
  std::string to_string() const;

  friend bool operator==(TierSet, TierSet) = default;

 private:
  static constexpr std::uint8_t bit(Tier t) noexcept {
    return static_cast<std::uint8_t>(1u << (to_int(t) - 1));
  }
  std::uint8_t bits_ = 0;
};

/// Origin of a graph element.
enum class Source : std::uint8_t { Plc = 0, Position = 1, Io = 2 };

std::string_view to_string(Source s) noexcept;
/// Throws Validation for anything but "plc", "position", "io".
Source source_from_string(std::string_view text);

class SourceSet {
 public:
  constexpr SourceSet() = default;
  SourceSet(std::initializer_list<Source> sources) {
    for (Source s : sources) insert(s);
  }

  void insert(Source s) noexcept { bits_ |= bit(s); }
  void insert(SourceSet other) noexcept { bits_ |= other.bits_; }
  bool contains(Source s) const noexcept { return (bits_ & bit(s)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  /// Members in fixed order plc, position, io.
  std::vector<Source> list() const;

  friend bool operator==(SourceSet, SourceSet) = default;

 private:
  static constexpr std::uint8_t bit(Source s) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<int>(s));
  }
  std::uint8_t bits_ = 0;
};

using PropertyValue = std::variant<bool, double, std::string>;
using Properties = std::map<std::string, PropertyValue, std::less<>>;

std::string to_string(const PropertyValue& value);

struct Node {
  std::string id;
  std::string name;
  std::string type;
  Tier tier = Tier::DomainInternal;
  Properties props;
  SourceSet prov;
};

struct Edge {
  std::string id;
  std::string src;
  std::string dst;
  std::string relation;
  Tier tier = Tier::DomainInternal;
  Properties props;
  SourceSet prov;
};

// In-memory labeled property graph. Nodes and edges keep insertion order and
// are addressed either by their opaque id or by their position.
//
// Construction is single-writer; a built graph is safe to read concurrently.
class PropertyGraph {
 public:
  explicit PropertyGraph(bool directed = false, bool multigraph = false)
      : directed_(directed), multigraph_(multigraph) {}

  bool directed() const noexcept { return directed_; }
  /// Multigraphs accept parallel edges with identical (src, dst, relation).
  /// Only template residual graphs use this.
  bool multigraph() const noexcept { return multigraph_; }

  /// Adds a node; an empty node.id is replaced by a fresh "n<k>" id.
  /// Throws Validation on empty name/type and DuplicateId on id reuse.
  std::string add_node(Node node);
  std::string add_node(std::string_view name, std::string_view type, Tier tier,
                       Properties props = {}, SourceSet prov = {});

  /// Adds an edge; an empty edge.id is replaced by a fresh "e<k>" id.
  /// Throws Integrity on a dangling endpoint, DuplicateEdge when the same
  /// (src, dst, relation) is already present (order-insensitive when
  /// undirected), Validation on an empty relation.
  std::string add_edge(Edge edge);
  std::string add_edge(std::string_view src, std::string_view dst, std::string_view relation,
                       Tier tier, Properties props = {}, SourceSet prov = {});

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  const Node& node(std::string_view id) const;
  const Edge& edge(std::string_view id) const;
  const Node* find_node(std::string_view id) const noexcept;
  std::optional<std::size_t> node_index(std::string_view id) const noexcept;
  std::optional<std::size_t> edge_index(std::string_view id) const noexcept;

  /// Positions of the edges touching node position `node`; self-loops appear once.
  std::span<const std::size_t> incident(std::size_t node) const noexcept { return incident_[node]; }
  /// Position of the endpoint opposite to `node` along edge position `edge`.
  std::size_t other_end(std::size_t edge, std::size_t node) const noexcept;
  std::size_t src_index(std::size_t edge) const noexcept { return endpoints_[edge].first; }
  std::size_t dst_index(std::size_t edge) const noexcept { return endpoints_[edge].second; }

  bool has_edge(std::string_view src, std::string_view dst, std::string_view relation) const;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  using IdIndex = std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>>;

  std::string edge_key(std::string_view src, std::string_view dst, std::string_view rel) const;
  std::string fresh_id(char prefix, std::size_t& counter, const IdIndex& used);

  bool directed_;
  bool multigraph_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  IdIndex node_ids_;
  IdIndex edge_ids_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
  std::unordered_set<std::string> edge_keys_;
  std::size_t next_node_ = 0;
  std::size_t next_edge_ = 0;
};

/// Induced subgraph on nodes whose tier is in `tiers`, keeping edges whose own
/// tier is in `tiers` and whose endpoints survive. Ids are preserved.
PropertyGraph project_tiers(const PropertyGraph& graph, TierSet tiers);

/// Weakly connected components. Each block lists node ids in insertion
/// order; blocks are ordered by their first node.
std::vector<std::vector<std::string>> connected_components(const PropertyGraph& graph);

}  // namespace dtgraph
