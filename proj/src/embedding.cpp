#include "dtgraph/embedding.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "dtgraph/error.hpp"

namespace dtgraph {

std::string_view to_string(MatchMode mode) noexcept {
  return mode == MatchMode::Exact ? "exact" : "generalized";
}

MatchMode match_mode_from_string(std::string_view text) {
  if (text == "exact") return MatchMode::Exact;
  if (text == "generalized") return MatchMode::Generalized;
  throw Error(ErrorKind::Validation, "unknown match mode '" + std::string(text) + "'");
}

bool label_matches(std::string_view label, std::string_view type, MatchMode mode,
                   const Taxonomy* taxonomy) {
  if (label == type) return true;
  if (mode == MatchMode::Exact || taxonomy == nullptr) return false;
  const CanonicalType actual = taxonomy->canonical_type(type);
  if (actual.name == label) return true;
  if (!taxonomy->contains(label)) return false;
  const CanonicalType wanted{std::string(label), true};
  return taxonomy->is_subtype(actual, wanted);
}

namespace {

std::uint64_t pair_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

// Relations between each unordered node pair, sorted so that multiset
// inclusion is std::includes.
using PairRelations = std::unordered_map<std::uint64_t, std::vector<std::string_view>>;

PairRelations pair_relations(const PropertyGraph& g) {
  PairRelations out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    out[pair_key(g.src_index(e), g.dst_index(e))].push_back(g.edges()[e].relation);
  }
  for (auto& [key, rels] : out) std::sort(rels.begin(), rels.end());
  return out;
}

bool covers(const PairRelations& data, std::size_t a, std::size_t b,
            const std::vector<std::string_view>& wanted) {
  auto it = data.find(pair_key(a, b));
  if (it == data.end()) return false;
  return std::includes(it->second.begin(), it->second.end(), wanted.begin(), wanted.end());
}

class Matcher {
 public:
  Matcher(const PropertyGraph& pattern, const PropertyGraph& abox, MatchMode mode,
          const Taxonomy* taxonomy)
      : pattern_(pattern), abox_(abox), data_pairs_(pair_relations(abox)) {
    const std::size_t np = pattern.node_count();
    const std::size_t nd = abox.node_count();

    // Label compatibility, computed once per distinct (label, type).
    std::map<std::pair<std::string_view, std::string_view>, bool> memo;
    compatible_.assign(np, std::vector<char>(nd, 0));
    candidates_.resize(np);
    for (std::size_t v = 0; v < np; ++v) {
      for (std::size_t d = 0; d < nd; ++d) {
        const std::string_view label = pattern.nodes()[v].type;
        const std::string_view type = abox.nodes()[d].type;
        auto [it, fresh] = memo.try_emplace({label, type}, false);
        if (fresh) it->second = label_matches(label, type, mode, taxonomy);
        if (it->second) {
          compatible_[v][d] = 1;
          candidates_[v].push_back(d);
        }
      }
    }

    neighbours_.resize(nd);
    for (std::size_t e = 0; e < abox.edge_count(); ++e) {
      const std::size_t s = abox.src_index(e);
      const std::size_t t = abox.dst_index(e);
      if (s == t) continue;
      neighbours_[s].push_back(t);
      neighbours_[t].push_back(s);
    }
    for (auto& row : neighbours_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    plan(pair_relations(pattern));
  }

  std::vector<Embedding> run() {
    std::vector<Embedding> out;
    if (pattern_.node_count() == 0) return out;
    for (const auto& c : candidates_) {
      if (c.empty()) return out;
    }
    assignment_.assign(pattern_.node_count(), 0);
    used_.assign(abox_.node_count(), 0);
    extend(0, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Step {
    std::size_t vertex = 0;
    std::ptrdiff_t anchor = -1;  // earlier step whose image's neighbours are candidates
    std::vector<std::string_view> loops;
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> back;  // (step, relations)
  };

  // Rarest candidate set first, then grow along pattern edges so that each
  // later node is drawn from the neighbourhood of an already placed one.
  void plan(const PairRelations& pattern_pairs) {
    const std::size_t np = pattern_.node_count();
    std::vector<std::vector<std::size_t>> adj(np);
    for (const auto& [key, rels] : pattern_pairs) {
      const auto a = static_cast<std::size_t>(key >> 32);
      const auto b = static_cast<std::size_t>(key & 0xffffffffu);
      if (a == b) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<std::ptrdiff_t> step_of(np, -1);
    for (std::size_t k = 0; k < np; ++k) {
      std::size_t best = np;
      bool best_linked = false;
      for (std::size_t v = 0; v < np; ++v) {
        if (step_of[v] >= 0) continue;
        const bool linked = std::any_of(adj[v].begin(), adj[v].end(),
                                        [&](std::size_t u) { return step_of[u] >= 0; });
        if (best == np || (linked && !best_linked) ||
            (linked == best_linked && candidates_[v].size() < candidates_[best].size())) {
          best = v;
          best_linked = linked;
        }
      }
      Step step;
      step.vertex = best;
      if (auto it = pattern_pairs.find(pair_key(best, best)); it != pattern_pairs.end()) {
        step.loops = it->second;
      }
      for (std::size_t s = 0; s < k; ++s) {
        const std::size_t u = steps_[s].vertex;
        auto it = pattern_pairs.find(pair_key(best, u));
        if (it == pattern_pairs.end()) continue;
        if (step.anchor < 0) step.anchor = static_cast<std::ptrdiff_t>(s);
        step.back.emplace_back(s, it->second);
      }
      step_of[best] = static_cast<std::ptrdiff_t>(k);
      steps_.push_back(std::move(step));
    }
  }

  void extend(std::size_t depth, std::vector<Embedding>& out) {
    if (depth == steps_.size()) {
      Embedding e;
      e.nodes.resize(assignment_.size());
      for (std::size_t s = 0; s < steps_.size(); ++s) {
        e.nodes[steps_[s].vertex] = abox_.nodes()[assignment_[s]].id;
      }
      out.push_back(std::move(e));
      return;
    }
    const Step& step = steps_[depth];
    const auto& pool = step.anchor >= 0
                           ? neighbours_[assignment_[static_cast<std::size_t>(step.anchor)]]
                           : candidates_[step.vertex];
    for (std::size_t d : pool) {
      if (used_[d] || !compatible_[step.vertex][d]) continue;
      if (!step.loops.empty() && !covers(data_pairs_, d, d, step.loops)) continue;
      bool ok = true;
      for (const auto& [s, rels] : step.back) {
        if (!covers(data_pairs_, d, assignment_[s], rels)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assignment_[depth] = d;
      used_[d] = 1;
      extend(depth + 1, out);
      used_[d] = 0;
    }
  }

  const PropertyGraph& pattern_;
  const PropertyGraph& abox_;
  PairRelations data_pairs_;
  std::vector<std::vector<char>> compatible_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::vector<std::size_t>> neighbours_;
  std::vector<Step> steps_;
  std::vector<std::size_t> assignment_;  // by step
  std::vector<char> used_;
};

}  // namespace

std::vector<Embedding> embeddings(const PropertyGraph& pattern, const PropertyGraph& abox,
                                  MatchMode mode, const Taxonomy* taxonomy) {
  if (pattern.node_count() > abox.node_count()) return {};
  return Matcher(pattern, abox, mode, taxonomy).run();
}

bool is_embedding(const Embedding& e, const PropertyGraph& pattern, const PropertyGraph& abox,
                  MatchMode mode, const Taxonomy* taxonomy) {
  if (e.nodes.size() != pattern.node_count()) return false;
  std::vector<std::size_t> image;
  std::unordered_set<std::size_t> seen;
  for (std::size_t k = 0; k < e.nodes.size(); ++k) {
    auto idx = abox.node_index(e.nodes[k]);
    if (!idx || !seen.insert(*idx).second) return false;
    if (!label_matches(pattern.nodes()[k].type, abox.nodes()[*idx].type, mode, taxonomy)) {
      return false;
    }
    image.push_back(*idx);
  }
  const PairRelations data = pair_relations(abox);
  for (const auto& [key, rels] : pair_relations(pattern)) {
    const auto a = static_cast<std::size_t>(key >> 32);
    const auto b = static_cast<std::size_t>(key & 0xffffffffu);
    if (!covers(data, image[a], image[b], rels)) return false;
  }
  return true;
}

std::size_t mni_support(const std::vector<Embedding>& embeddings, std::size_t pattern_nodes) {
  if (embeddings.empty() || pattern_nodes == 0) return 0;
  std::size_t best = SIZE_MAX;
  for (std::size_t k = 0; k < pattern_nodes; ++k) {
    std::unordered_set<std::string_view> image;
    for (const Embedding& e : embeddings) image.insert(e.nodes[k]);
    best = std::min(best, image.size());
  }
  return best;
}

}  // namespace dtgraph
