#include "dtgraph/miner.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <exception>
#include <map>
#include <set>

#include <omp.h>

#include "detail/code_core.hpp"
#include "detail/label_graph.hpp"
#include "dtgraph/canonical.hpp"
#include "dtgraph/error.hpp"

namespace dtgraph {

void MiningParams::validate() const {
  if (min_support < 2) throw Error(ErrorKind::Validation, "min_support must be at least 2");
  if (max_edges < 1) throw Error(ErrorKind::Validation, "max_edges must be at least 1");
  if (max_patterns < 1) throw Error(ErrorKind::Validation, "max_patterns must be at least 1");
  if (tiers.empty()) throw Error(ErrorKind::Validation, "tier set must not be empty");
  if (threads < 0) throw Error(ErrorKind::Validation, "threads must not be negative");
}

nlohmann::json MiningParams::to_json() const {
  // Thread count is left out on purpose: reports must not depend on it.
  return {{"min_support", min_support}, {"max_edges", max_edges},
          {"mode", std::string(to_string(mode))}, {"closed_only", closed_only},
          {"tiers", tiers.levels()}, {"max_patterns", max_patterns}};
}

MiningParams MiningParams::from_json(const nlohmann::json& doc) {
  MiningParams p;
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "mining params must be an object");
  try {
    p.min_support = doc.value("min_support", p.min_support);
    p.max_edges = doc.value("max_edges", p.max_edges);
    p.mode = match_mode_from_string(doc.value("mode", std::string("exact")));
    p.closed_only = doc.value("closed_only", p.closed_only);
    p.max_patterns = doc.value("max_patterns", p.max_patterns);
    if (doc.contains("tiers")) {
      TierSet tiers;
      for (const auto& t : doc.at("tiers")) tiers.insert(tier_from_int(t.get<int>()));
      p.tiers = tiers;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("bad mining params: ") + e.what());
  }
  return p;
}

namespace {

using detail::Code;
using detail::Tuple;

// One occurrence of the current code: vmap[k] is the data vertex of code
// vertex k, edges[t] the data edge matched by tuple t.
struct Occurrence {
  std::vector<int> vmap;
  std::vector<int> edges;
};
using Projected = std::vector<Occurrence>;
using Extensions = std::map<Tuple, Projected, detail::TupleLess>;

struct Context {
  detail::LabelTable table;
  detail::LabeledGraph data;
  std::vector<std::string> ids;  // data vertex -> ABox node id
  const MiningParams* params = nullptr;
};

Context build_context(const PropertyGraph& abox, const MiningParams& params,
                      const Taxonomy* taxonomy) {
  const bool general = params.mode == MatchMode::Generalized && taxonomy != nullptr;
  std::vector<std::vector<std::string>> admissible;
  std::vector<std::string> vocab;
  for (const Node& n : abox.nodes()) {
    std::vector<std::string> labels;
    if (general) {
      const CanonicalType t = taxonomy->canonical_type(n.type);
      labels.push_back(t.name);
      // The root matches everything and would only add noise patterns.
      for (auto& a : taxonomy->ancestors(t)) {
        if (a != kRootType) labels.push_back(std::move(a));
      }
    } else {
      labels.push_back(n.type);
    }
    vocab.insert(vocab.end(), labels.begin(), labels.end());
    admissible.push_back(std::move(labels));
  }
  for (const Edge& e : abox.edges()) vocab.push_back(e.relation);

  Context ctx;
  ctx.table = detail::LabelTable(std::move(vocab));
  ctx.params = &params;
  for (std::size_t v = 0; v < abox.node_count(); ++v) {
    ctx.data.add_vertex(ctx.table.id(admissible[v].front()));
    auto& adm = ctx.data.admissible.back();
    adm.clear();
    for (const auto& l : admissible[v]) adm.push_back(ctx.table.id(l));
    std::sort(adm.begin(), adm.end());
    ctx.ids.push_back(abox.nodes()[v].id);
  }
  for (std::size_t e = 0; e < abox.edge_count(); ++e) {
    const auto s = static_cast<int>(abox.src_index(e));
    const auto d = static_cast<int>(abox.dst_index(e));
    if (s == d) continue;
    ctx.data.add_edge(s, d, ctx.table.id(abox.edges()[e].relation));
  }
  return ctx;
}

// MNI; stops counting as soon as a column falls below `floor`.
std::size_t support_of(const Projected& proj, int vertices, std::size_t floor = 0) {
  if (proj.empty()) return 0;
  std::size_t best = SIZE_MAX;
  std::vector<int> column;
  column.reserve(proj.size());
  for (int k = 0; k < vertices; ++k) {
    column.clear();
    for (const Occurrence& o : proj) column.push_back(o.vmap[static_cast<std::size_t>(k)]);
    std::sort(column.begin(), column.end());
    const auto distinct = static_cast<std::size_t>(
        std::unique(column.begin(), column.end()) - column.begin());
    best = std::min(best, distinct);
    if (best < floor) break;
  }
  return best;
}

Extensions seed_extensions(const Context& ctx) {
  Extensions out;
  const auto& g = ctx.data;
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (const auto& a : g.adj[static_cast<std::size_t>(u)]) {
      for (int lu : g.admissible[static_cast<std::size_t>(u)]) {
        for (int lv : g.admissible[static_cast<std::size_t>(a.to)]) {
          if (lu > lv) continue;  // the reversed orientation spells a smaller code
          out[Tuple{0, 1, lu, a.label, lv}].push_back({{u, a.to}, {a.edge}});
        }
      }
    }
  }
  return out;
}

Extensions extensions(const Context& ctx, const Code& code, const Projected& proj) {
  Extensions out;
  const auto& g = ctx.data;
  const std::vector<int> rmp = detail::rightmost_path(code);
  const int rm = rmp.front();
  const int next = detail::vertex_count(code);
  std::vector<int> plabel(static_cast<std::size_t>(next));
  std::vector<char> on_rmp(static_cast<std::size_t>(next), 0);
  for (const Tuple& t : code) {
    plabel[static_cast<std::size_t>(t.i)] = t.li;
    plabel[static_cast<std::size_t>(t.j)] = t.lj;
  }
  for (int v : rmp) on_rmp[static_cast<std::size_t>(v)] = 1;

  for (const Occurrence& o : proj) {
    auto code_vertex = [&](int dv) {
      auto it = std::find(o.vmap.begin(), o.vmap.end(), dv);
      return it == o.vmap.end() ? -1 : static_cast<int>(it - o.vmap.begin());
    };
    auto used = [&](int edge) { return std::find(o.edges.begin(), o.edges.end(), edge) != o.edges.end(); };

    const int rm_data = o.vmap[static_cast<std::size_t>(rm)];
    for (const auto& a : g.adj[static_cast<std::size_t>(rm_data)]) {
      const int w = code_vertex(a.to);
      if (w < 0 || w == rm || !on_rmp[static_cast<std::size_t>(w)] || used(a.edge)) continue;
      Occurrence c = o;
      c.edges.push_back(a.edge);
      out[Tuple{rm, w, plabel[static_cast<std::size_t>(rm)], a.label, plabel[static_cast<std::size_t>(w)]}]
          .push_back(std::move(c));
    }
    for (int v : rmp) {
      for (const auto& a : g.adj[static_cast<std::size_t>(o.vmap[static_cast<std::size_t>(v)])]) {
        if (code_vertex(a.to) >= 0) continue;
        for (int l : g.admissible[static_cast<std::size_t>(a.to)]) {
          Occurrence c = o;
          c.vmap.push_back(a.to);
          c.edges.push_back(a.edge);
          out[Tuple{v, next, plabel[static_cast<std::size_t>(v)], a.label, l}].push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

Pattern make_pattern(const Context& ctx, const Code& code, const Projected& proj, std::size_t support) {
  Pattern p;
  p.code = detail::to_public(code, ctx.table);
  p.graph = graph_of(p.code);
  p.support = support;
  std::set<std::vector<int>> maps;
  for (const Occurrence& o : proj) maps.insert(o.vmap);
  p.embeddings.reserve(maps.size());
  for (const auto& m : maps) {
    Embedding e;
    for (int v : m) e.nodes.push_back(ctx.ids[static_cast<std::size_t>(v)]);
    p.embeddings.push_back(std::move(e));
  }
  std::sort(p.embeddings.begin(), p.embeddings.end());
  return p;
}

class Search {
 public:
  Search(const Context& ctx, std::atomic<std::size_t>& reported)
      : ctx_(ctx), reported_(reported) {}

  void run(const Tuple& seed, const Projected& proj, std::size_t support) {
    Code code{seed};
    grow(code, proj, support);
  }

  std::vector<Pattern> take() { return std::move(found_); }

 private:
  void grow(Code& code, const Projected& proj, std::size_t support) {
    const MiningParams& params = *ctx_.params;
    if (reported_.fetch_add(1) >= params.max_patterns) {
      throw Error(ErrorKind::Overflow,
                  "more than " + std::to_string(params.max_patterns) +
                      " frequent patterns; raise min_support or lower max_edges");
    }
    found_.push_back(make_pattern(ctx_, code, proj, support));
    if (code.size() >= params.max_edges) return;

    const Extensions ext = extensions(ctx_, code, proj);
    const int vertices = detail::vertex_count(code);
    for (const auto& [t, child] : ext) {
      const int child_vertices = t.forward() ? vertices + 1 : vertices;
      const std::size_t s = support_of(child, child_vertices, params.min_support);
      if (s < params.min_support) continue;
      code.push_back(t);
      if (detail::is_min(code)) grow(code, child, s);
      code.pop_back();
    }
  }

  const Context& ctx_;
  std::atomic<std::size_t>& reported_;
  std::vector<Pattern> found_;
};

bool pattern_less(const Pattern& a, const Pattern& b) {
  if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
  return compare(a.code, b.code) < 0;
}

// Graph of the code with every vertex label collapsed, so that label
// variants of one shape share a key.
std::string skeleton_key(const DFSCode& code) {
  const detail::LabelTable table = detail::labels_of(code);
  detail::LabeledGraph g = detail::graph_of(detail::to_internal(code, table));
  std::fill(g.label.begin(), g.label.end(), -1);
  std::string key;
  for (const Tuple& t : detail::min_code(g).code) {
    key += std::to_string(t.i) + ',' + std::to_string(t.j) + ',' + table.name(t.le) + ';';
  }
  return key;
}

// Node sets covered by the embeddings, ignoring which pattern node went where.
std::set<std::vector<std::string>> occurrences(const Pattern& p) {
  std::set<std::vector<std::string>> out;
  for (const auto& e : p.embeddings) {
    auto nodes = e.nodes;
    std::sort(nodes.begin(), nodes.end());
    out.insert(std::move(nodes));
  }
  return out;
}

// Generalized mode: a pattern is dropped when a strictly more specific
// pattern of the same shape covers exactly the same node sets. Comparing
// ordered embeddings would not do, since a symmetric general pattern has more
// of them than an asymmetric specialization.
std::vector<Pattern> drop_redundant_generalizations(std::vector<Pattern> patterns,
                                                    const Taxonomy& taxonomy) {
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    buckets[{patterns[k].node_count(), patterns[k].edge_count(), skeleton_key(patterns[k].code)}]
        .push_back(k);
  }
  std::vector<std::set<std::vector<std::string>>> occ;
  occ.reserve(patterns.size());
  for (const auto& p : patterns) occ.push_back(occurrences(p));
  std::vector<char> drop(patterns.size(), 0);
  for (const auto& [key, members] : buckets) {
    for (std::size_t p : members) {
      for (std::size_t q : members) {
        if (p == q || occ[p] != occ[q]) continue;
        if (!embeddings(patterns[p].graph, patterns[q].graph, MatchMode::Generalized, &taxonomy)
                 .empty()) {
          drop[p] = 1;
          break;
        }
      }
    }
  }
  std::vector<Pattern> out;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    if (!drop[k]) out.push_back(std::move(patterns[k]));
  }
  return out;
}

std::vector<Pattern> mine(const PropertyGraph& abox, const MiningParams& params,
                          const Taxonomy* taxonomy, bool parallel) {
  params.validate();
  if (params.mode == MatchMode::Generalized && taxonomy == nullptr) {
    throw Error(ErrorKind::Validation, "generalized mining needs a taxonomy");
  }
  const PropertyGraph projected = project_tiers(abox, params.tiers);
  const Context ctx = build_context(projected, params, taxonomy);

  std::vector<std::pair<Tuple, Projected>> seeds;
  std::vector<std::size_t> seed_support;
  for (auto& [t, proj] : seed_extensions(ctx)) {
    const std::size_t s = support_of(proj, 2, params.min_support);
    if (s < params.min_support) continue;
    seeds.emplace_back(t, std::move(proj));
    seed_support.push_back(s);
  }

  std::atomic<std::size_t> reported{0};
  std::vector<std::vector<Pattern>> per_seed(seeds.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
  const int threads = params.threads > 0 ? params.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (parallel)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      Search search(ctx, reported);
      search.run(seeds[i].first, seeds[i].second, seed_support[i]);
      per_seed[i] = search.take();
    } catch (...) {
#pragma omp critical(dtgraph_miner_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Pattern> out;
  for (auto& block : per_seed) {
    for (auto& p : block) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), pattern_less);
  if (params.mode == MatchMode::Generalized) {
    out = drop_redundant_generalizations(std::move(out), *taxonomy);
  }
  if (params.closed_only) out = filter_closed(out);
  return out;
}

}  // namespace

std::vector<Pattern> mine_frequent(const PropertyGraph& abox, const MiningParams& params,
                                   const Taxonomy* taxonomy) {
  return mine(abox, params, taxonomy, true);
}

std::vector<Pattern> mine_frequent_serial(const PropertyGraph& abox, const MiningParams& params,
                                          const Taxonomy* taxonomy) {
  return mine(abox, params, taxonomy, false);
}

namespace {

// All bijections from the nodes of `a` onto the nodes of `b` that keep node
// types and the relation multiset of every node pair. Both graphs are tiny.
std::vector<std::vector<std::size_t>> isomorphisms(const PropertyGraph& a, const PropertyGraph& b) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = a.node_count();
  if (n != b.node_count() || a.edge_count() != b.edge_count()) return out;
  auto relations = [](const PropertyGraph& g) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> rel;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto s = g.src_index(e), d = g.dst_index(e);
      if (s > d) std::swap(s, d);
      rel[{s, d}].push_back(g.edges()[e].relation);
    }
    for (auto& [k, v] : rel) std::sort(v.begin(), v.end());
    return rel;
  };
  const auto ra = relations(a);
  const auto rb = relations(b);
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;
  do {
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) ok = a.nodes()[k].type == b.nodes()[perm[k]].type;
    for (auto it = ra.begin(); it != ra.end() && ok; ++it) {
      auto s = perm[it->first.first], d = perm[it->first.second];
      if (s > d) std::swap(s, d);
      auto jt = rb.find({s, d});
      ok = jt != rb.end() && jt->second == it->second;
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

PropertyGraph edge_subgraph(const PropertyGraph& g, const std::vector<std::size_t>& edges) {
  PropertyGraph sub(false, true);
  std::vector<std::size_t> nodes;
  for (std::size_t e : edges) {
    nodes.push_back(g.src_index(e));
    nodes.push_back(g.dst_index(e));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (std::size_t v : nodes) {
    Node n = g.nodes()[v];
    n.props.clear();
    sub.add_node(std::move(n));
  }
  for (std::size_t e : edges) {
    const Edge& src = g.edges()[e];
    Edge copy;
    copy.id = src.id;
    copy.src = src.src;
    copy.dst = src.dst;
    copy.relation = src.relation;
    sub.add_edge(std::move(copy));
  }
  return sub;
}

}  // namespace

std::vector<Pattern> brute_force_frequent(const PropertyGraph& abox, const MiningParams& params) {
  params.validate();
  if (params.mode != MatchMode::Exact) {
    throw Error(ErrorKind::Validation, "brute_force_frequent supports exact mode only");
  }
  const PropertyGraph g = project_tiers(abox, params.tiers);
  if (g.node_count() > 25 || params.max_edges > 4) {
    throw Error(ErrorKind::UnsupportedSize, "brute force is limited to 25 nodes and 4 edges");
  }

  std::vector<std::size_t> usable;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (g.src_index(e) != g.dst_index(e)) usable.push_back(e);
  }

  // Connected edge subsets, level by level.
  std::set<std::vector<std::size_t>> level;
  for (std::size_t e : usable) level.insert({e});
  std::map<std::string, std::vector<PropertyGraph>> buckets;
  for (std::size_t size = 1; size <= params.max_edges && !level.empty(); ++size) {
    std::set<std::vector<std::size_t>> next;
    for (const auto& subset : level) {
      PropertyGraph sub = edge_subgraph(g, subset);
      buckets[canonical_signature(sub)].push_back(std::move(sub));
      if (size == params.max_edges) continue;
      std::set<std::size_t> touched;
      for (std::size_t e : subset) {
        touched.insert(g.src_index(e));
        touched.insert(g.dst_index(e));
      }
      for (std::size_t f : usable) {
        if (std::find(subset.begin(), subset.end(), f) != subset.end()) continue;
        if (!touched.contains(g.src_index(f)) && !touched.contains(g.dst_index(f))) continue;
        std::vector<std::size_t> grown = subset;
        grown.insert(std::lower_bound(grown.begin(), grown.end(), f), f);
        next.insert(std::move(grown));
      }
    }
    level = std::move(next);
  }

  std::vector<Pattern> out;
  for (const auto& [signature, occurrences] : buckets) {
    const PropertyGraph& rep = occurrences.front();
    std::set<std::vector<std::string>> maps;
    for (const PropertyGraph& occ : occurrences) {
      for (const auto& perm : isomorphisms(rep, occ)) {
        std::vector<std::string> m;
        for (std::size_t k = 0; k < perm.size(); ++k) m.push_back(occ.nodes()[perm[k]].id);
        maps.insert(std::move(m));
      }
    }
    std::vector<Embedding> embs;
    for (const auto& m : maps) embs.push_back({m});
    const std::size_t support = mni_support(embs, rep.node_count());
    if (support < params.min_support) continue;

    // Re-index occurrences from representative order to code order.
    const detail::LabelTable table = detail::labels_of(rep);
    const detail::MinCodeResult mc = detail::min_code(detail::to_labeled(rep, table));
    Pattern p;
    p.code = detail::to_public(mc.code, table);
    p.graph = graph_of(p.code);
    p.support = support;
    for (const Embedding& e : embs) {
      Embedding r;
      for (int v : mc.vmap) r.nodes.push_back(e.nodes[static_cast<std::size_t>(v)]);
      p.embeddings.push_back(std::move(r));
    }
    std::sort(p.embeddings.begin(), p.embeddings.end());
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), pattern_less);
  return out;
}

std::vector<Pattern> filter_closed(const std::vector<Pattern>& patterns) {
  std::vector<Pattern> out;
  for (const Pattern& p : patterns) {
    const bool absorbed = std::any_of(patterns.begin(), patterns.end(), [&](const Pattern& q) {
      return q.support == p.support && q.edge_count() > p.edge_count() &&
             !embeddings(p.graph, q.graph).empty();
    });
    if (!absorbed) out.push_back(p);
  }
  return out;
}

nlohmann::json patterns_to_json(const std::vector<Pattern>& patterns, const MiningParams& params) {
  nlohmann::json list = nlohmann::json::array();
  for (const Pattern& p : patterns) {
    nlohmann::json embs = nlohmann::json::array();
    for (const Embedding& e : p.embeddings) embs.push_back(e.nodes);
    list.push_back({{"code", code_to_json(p.code)},
                    {"support", p.support},
                    {"nodes", p.node_count()},
                    {"edges", p.edge_count()},
                    {"embeddings", std::move(embs)}});
  }
  return {{"params", params.to_json()}, {"patterns", std::move(list)}};
}

std::vector<Pattern> patterns_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("patterns") || !doc["patterns"].is_array()) {
    throw Error(ErrorKind::Validation, "pattern report needs a \"patterns\" array");
  }
  std::vector<Pattern> out;
  for (const auto& item : doc["patterns"]) {
    if (!item.is_object() || !item.contains("code")) {
      throw Error(ErrorKind::Validation, "pattern entry needs a \"code\"");
    }
    Pattern p;
    p.code = code_from_json(item["code"]);
    p.graph = graph_of(p.code);
    try {
      p.support = item.value("support", std::size_t{0});
      for (const auto& e : item.value("embeddings", nlohmann::json::array())) {
        Embedding emb{e.get<std::vector<std::string>>()};
        if (emb.nodes.size() != p.node_count()) {
          throw Error(ErrorKind::Validation, "embedding size does not match its pattern");
        }
        p.embeddings.push_back(std::move(emb));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Validation, std::string("bad pattern entry: ") + e.what());
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace dtgraph
