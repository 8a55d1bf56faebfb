#include "dtgraph/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dtgraph/error.hpp"
#include "dtgraph/graph_io.hpp"

namespace dtgraph {
namespace {

std::string join(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::string out;
  for (const auto& s : items) {
    out += s;
    out += '\x1e';
  }
  return out;
}

// Vertex- and edge-colored complete description of the input graph: every
// ordered vertex pair carries the id of its relation multiset (0 = none).
struct ColoredGraph {
  int n = 0;
  bool directed = false;
  std::vector<int> vertex_key;         // rank of the node key
  std::vector<int> pair;               // n*n, rank of the pair key
  std::vector<std::string> node_text;  // per vertex: type + self loops
  std::vector<std::vector<std::string>> node_loops;
  std::vector<std::vector<std::string>> out_rels;  // n*n, sorted relations u->v (u--v)

  int at(int u, int v) const { return pair[static_cast<std::size_t>(u * n + v)]; }
};

ColoredGraph describe(const PropertyGraph& g) {
  ColoredGraph cg;
  cg.n = static_cast<int>(g.node_count());
  cg.directed = g.directed();
  const auto n = static_cast<std::size_t>(cg.n);
  cg.node_loops.assign(n, {});
  cg.out_rels.assign(n * n, {});
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const std::size_t s = g.src_index(e);
    const std::size_t d = g.dst_index(e);
    const std::string& rel = g.edges()[e].relation;
    if (s == d) {
      cg.node_loops[s].push_back(rel);
      continue;
    }
    cg.out_rels[s * n + d].push_back(rel);
    if (!cg.directed) cg.out_rels[d * n + s].push_back(rel);
  }
  for (auto& r : cg.out_rels) std::sort(r.begin(), r.end());
  for (auto& r : cg.node_loops) std::sort(r.begin(), r.end());

  cg.node_text.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    cg.node_text[v] = g.nodes()[v].type + '\x1f' + join(cg.node_loops[v]);
  }
  std::vector<std::string> node_vocab = cg.node_text;
  std::sort(node_vocab.begin(), node_vocab.end());
  node_vocab.erase(std::unique(node_vocab.begin(), node_vocab.end()), node_vocab.end());
  cg.vertex_key.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    cg.vertex_key[v] = static_cast<int>(
        std::lower_bound(node_vocab.begin(), node_vocab.end(), cg.node_text[v]) -
        node_vocab.begin());
  }

  std::vector<std::string> pair_text(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const auto& out = cg.out_rels[u * n + v];
      if (cg.directed) {
        const auto& in = cg.out_rels[v * n + u];
        if (out.empty() && in.empty()) continue;
        pair_text[u * n + v] = join(out) + '\x1d' + join(in);
      } else if (!out.empty()) {
        pair_text[u * n + v] = join(out);
      }
    }
  }
  std::vector<std::string> pair_vocab;
  for (const auto& t : pair_text) {
    if (!t.empty()) pair_vocab.push_back(t);
  }
  std::sort(pair_vocab.begin(), pair_vocab.end());
  pair_vocab.erase(std::unique(pair_vocab.begin(), pair_vocab.end()), pair_vocab.end());
  cg.pair.assign(n * n, 0);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (pair_text[i].empty()) continue;
    cg.pair[i] = 1 + static_cast<int>(std::lower_bound(pair_vocab.begin(), pair_vocab.end(),
                                                       pair_text[i]) -
                                      pair_vocab.begin());
  }
  return cg;
}

// Partition of the vertices into ordered cells. color[v] is the position of
// the first vertex of v's cell in the cell order, so a discrete partition's
// colors are a labeling.
using Coloring = std::vector<int>;

int cell_count(const Coloring& c) {
  std::vector<char> seen(c.size(), 0);
  int k = 0;
  for (int x : c) {
    if (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      ++k;
    }
  }
  return k;
}

void refine(const ColoredGraph& g, Coloring& color) {
  const int n = g.n;
  int cells = cell_count(color);
  std::vector<std::vector<std::pair<int, int>>> sig(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  while (cells < n) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.clear();
      for (int u = 0; u < n; ++u) {
        if (int p = g.at(v, u); p != 0) s.emplace_back(color[static_cast<std::size_t>(u)], p);
      }
      std::sort(s.begin(), s.end());
    }
    std::iota(order.begin(), order.end(), 0);
    auto key_less = [&](int a, int b) {
      auto ca = color[static_cast<std::size_t>(a)];
      auto cb = color[static_cast<std::size_t>(b)];
      if (ca != cb) return ca < cb;
      return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)];
    };
    std::sort(order.begin(), order.end(), key_less);
    Coloring next(static_cast<std::size_t>(n));
    int start = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && key_less(order[static_cast<std::size_t>(i - 1)], order[static_cast<std::size_t>(i)])) {
        start = i;
      }
      next[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = start;
    }
    const int next_cells = cell_count(next);
    color = std::move(next);
    if (next_cells == cells) break;
    cells = next_cells;
  }
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const ColoredGraph& g) : g_(g) {}

  // Returns pos -> vertex for the canonical labeling.
  std::vector<int> run() {
    Coloring initial(static_cast<std::size_t>(g_.n));
    // Initial cells ordered by node key rank.
    std::vector<int> order(static_cast<std::size_t>(g_.n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return g_.vertex_key[static_cast<std::size_t>(a)] < g_.vertex_key[static_cast<std::size_t>(b)];
    });
    int start = 0;
    for (int i = 0; i < g_.n; ++i) {
      const int v = order[static_cast<std::size_t>(i)];
      if (i > 0 && g_.vertex_key[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])] !=
                       g_.vertex_key[static_cast<std::size_t>(v)]) {
        start = i;
      }
      initial[static_cast<std::size_t>(v)] = start;
    }
    search(std::move(initial), 0);
    return best_perm_;
  }

 private:
  std::vector<int> certificate(const std::vector<int>& perm) const {
    std::vector<int> cert;
    cert.reserve(static_cast<std::size_t>(g_.n * (g_.n + 1)));
    for (int v : perm) cert.push_back(g_.vertex_key[static_cast<std::size_t>(v)]);
    for (int p = 0; p < g_.n; ++p) {
      for (int q = g_.directed ? 0 : p + 1; q < g_.n; ++q) {
        if (p != q) cert.push_back(g_.at(perm[static_cast<std::size_t>(p)], perm[static_cast<std::size_t>(q)]));
      }
    }
    return cert;
  }

  void add_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> gamma(static_cast<std::size_t>(g_.n));
    for (std::size_t p = 0; p < from.size(); ++p) gamma[static_cast<std::size_t>(from[p])] = to[p];
    generators_.push_back(std::move(gamma));
  }

  int find(std::vector<int>& parent, int x) const {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  // Orbits of the group generated by the known automorphisms that fix the
  // current individualization path pointwise.
  std::vector<int> stabilizer_orbits() {
    std::vector<int> parent(static_cast<std::size_t>(g_.n));
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gamma : generators_) {
      bool fixes = std::all_of(path_.begin(), path_.end(),
                               [&](int v) { return gamma[static_cast<std::size_t>(v)] == v; });
      if (!fixes) continue;
      for (int v = 0; v < g_.n; ++v) {
        int a = find(parent, v);
        int b = find(parent, gamma[static_cast<std::size_t>(v)]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
    for (int v = 0; v < g_.n; ++v) parent[static_cast<std::size_t>(v)] = find(parent, v);
    return parent;
  }

  // Returns the level to backjump to, or -1 to continue normally.
  int search(Coloring color, int level) {
    refine(g_, color);
    const auto n = static_cast<std::size_t>(g_.n);

    // Target cell: smallest non-singleton cell, first by position on ties.
    std::vector<int> size(n, 0);
    for (int c : color) ++size[static_cast<std::size_t>(c)];
    int target = -1;
    for (std::size_t c = 0; c < n; ++c) {
      if (size[c] > 1 && (target < 0 || size[c] < size[static_cast<std::size_t>(target)])) {
        target = static_cast<int>(c);
      }
    }

    if (target < 0) {
      std::vector<int> perm(n);
      for (std::size_t v = 0; v < n; ++v) perm[static_cast<std::size_t>(color[v])] = static_cast<int>(v);
      auto cert = certificate(perm);
      if (first_cert_.empty() && n > 0) {
        first_cert_ = best_cert_ = cert;
        first_perm_ = best_perm_ = perm;
        first_path_ = path_;
        return -1;
      }
      if (n == 0) return -1;
      if (cert == first_cert_) {
        add_automorphism(first_perm_, perm);
        int d = 0;
        while (d < static_cast<int>(path_.size()) && d < static_cast<int>(first_path_.size()) &&
               path_[static_cast<std::size_t>(d)] == first_path_[static_cast<std::size_t>(d)]) {
          ++d;
        }
        return d;
      }
      if (cert == best_cert_) {
        add_automorphism(best_perm_, perm);
      } else if (cert < best_cert_) {
        best_cert_ = std::move(cert);
        best_perm_ = std::move(perm);
      }
      return -1;
    }

    std::vector<int> cell;
    for (std::size_t v = 0; v < n; ++v) {
      if (color[v] == target) cell.push_back(static_cast<int>(v));
    }
    std::vector<int> explored;
    std::size_t generators_seen = static_cast<std::size_t>(-1);
    std::vector<int> orbits;
    for (int v : cell) {
      if (!explored.empty()) {
        if (generators_seen != generators_.size()) {
          orbits = stabilizer_orbits();
          generators_seen = generators_.size();
        }
        bool pruned = std::any_of(explored.begin(), explored.end(), [&](int u) {
          return orbits[static_cast<std::size_t>(u)] == orbits[static_cast<std::size_t>(v)];
        });
        if (pruned) continue;
      }
      explored.push_back(v);
      Coloring child = color;
      for (std::size_t u = 0; u < n; ++u) {
        if (child[u] == target && static_cast<int>(u) != v) child[u] = target + 1;
      }
      path_.push_back(v);
      int jump = search(std::move(child), level + 1);
      path_.pop_back();
      if (jump >= 0 && jump < level) return jump;
    }
    return -1;
  }

  const ColoredGraph& g_;
  std::vector<int> path_;
  std::vector<int> first_path_;
  std::vector<int> first_cert_, best_cert_;
  std::vector<int> first_perm_, best_perm_;
  std::vector<std::vector<int>> generators_;
};

}  // namespace

std::string canonical_signature(const PropertyGraph& graph, std::size_t max_nodes) {
  if (graph.node_count() > max_nodes) {
    throw Error(ErrorKind::UnsupportedSize,
                "canonical signature limited to " + std::to_string(max_nodes) + " nodes, graph has " +
                    std::to_string(graph.node_count()));
  }
  const ColoredGraph cg = describe(graph);
  const std::vector<int> perm = CanonicalSearch(cg).run();
  const auto n = static_cast<std::size_t>(cg.n);

  json nodes = json::array();
  for (int v : perm) {
    const auto& node = graph.nodes()[static_cast<std::size_t>(v)];
    nodes.push_back(json::array({node.type, cg.node_loops[static_cast<std::size_t>(v)]}));
  }
  json edges = json::array();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = cg.directed ? 0 : p + 1; q < n; ++q) {
      if (p == q) continue;
      const auto& rels = cg.out_rels[static_cast<std::size_t>(perm[p]) * n + static_cast<std::size_t>(perm[q])];
      if (!rels.empty()) edges.push_back(json::array({p, q, rels}));
    }
  }
  return json::array({cg.directed, nodes, edges}).dump();
}

}  // namespace dtgraph
