#include "detail/code_core.hpp"

#include <algorithm>
#include <tuple>

#include "dtgraph/error.hpp"

namespace dtgraph::detail {

LabelTable::LabelTable(std::vector<std::string> vocab) : names_(std::move(vocab)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

int LabelTable::id(std::string_view label) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), label);
  if (it == names_.end() || *it != label) return -1;
  return static_cast<int>(it - names_.begin());
}

int compare(const Tuple& a, const Tuple& b) noexcept {
  const bool fa = a.forward();
  const bool fb = b.forward();
  if (fa != fb) return fa ? 1 : -1;
  std::tuple<int, int, int, int, int> ka, kb;
  if (!fa) {
    ka = {a.i, a.j, a.le, a.li, a.lj};
    kb = {b.i, b.j, b.le, b.li, b.lj};
  } else {
    ka = {a.j, -a.i, a.li, a.le, a.lj};
    kb = {b.j, -b.i, b.li, b.le, b.lj};
  }
  if (ka < kb) return -1;
  if (kb < ka) return 1;
  return 0;
}

int compare(const Code& a, const Code& b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (int c = compare(a[k], b[k]); c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

int vertex_count(const Code& code) {
  int n = 0;
  for (const Tuple& t : code) n = std::max({n, t.i + 1, t.j + 1});
  return n;
}

std::vector<int> rightmost_path(const Code& code) {
  if (code.empty()) return {};
  int cur = vertex_count(code) - 1;
  std::vector<int> path{cur};
  for (auto it = code.rbegin(); it != code.rend(); ++it) {
    if (it->forward() && it->j == cur) {
      cur = it->i;
      path.push_back(cur);
    }
  }
  return path;
}

int LabeledGraph::add_vertex(int lbl) {
  label.push_back(lbl);
  admissible.push_back({lbl});
  adj.emplace_back();
  return vertex_count() - 1;
}

void LabeledGraph::add_edge(int u, int v, int lbl) {
  const int e = edge_count++;
  adj[static_cast<std::size_t>(u)].push_back({v, lbl, e});
  adj[static_cast<std::size_t>(v)].push_back({u, lbl, e});
}

LabeledGraph graph_of(const Code& code) {
  LabeledGraph g;
  const int n = vertex_count(code);
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  for (const Tuple& t : code) {
    labels[static_cast<std::size_t>(t.i)] = t.li;
    labels[static_cast<std::size_t>(t.j)] = t.lj;
  }
  for (int l : labels) g.add_vertex(l);
  for (const Tuple& t : code) g.add_edge(t.i, t.j, t.le);
  return g;
}

void validate_code(const Code& code) {
  if (code.empty()) throw Error(ErrorKind::Validation, "empty DFS code");
  const Tuple& first = code.front();
  if (first.i != 0 || first.j != 1) {
    throw Error(ErrorKind::Validation, "DFS code must start with a (0,1) edge");
  }
  std::vector<int> labels{first.li, first.lj};
  for (std::size_t k = 1; k < code.size(); ++k) {
    const Tuple& t = code[k];
    const Code prefix(code.begin(), code.begin() + static_cast<std::ptrdiff_t>(k));
    const std::vector<int> rmp = rightmost_path(prefix);
    auto on_path = [&](int v) { return std::find(rmp.begin(), rmp.end(), v) != rmp.end(); };
    const int next = static_cast<int>(labels.size());
    bool ok = false;
    if (t.j == next) {
      ok = on_path(t.i) && labels[static_cast<std::size_t>(t.i)] == t.li;
      if (ok) labels.push_back(t.lj);
    } else if (t.j < t.i) {
      ok = t.i == rmp.front() && t.j >= 0 && on_path(t.j) &&
           labels[static_cast<std::size_t>(t.i)] == t.li && labels[static_cast<std::size_t>(t.j)] == t.lj;
    }
    if (!ok) {
      throw Error(ErrorKind::Validation,
                  "tuple " + std::to_string(k) + " is not a rightmost-path extension");
    }
  }
}

namespace {

struct State {
  std::vector<int> vmap;  // code vertex -> graph vertex
  std::vector<int> inv;   // graph vertex -> code vertex or -1
  std::vector<char> used;
};

// Walks all DFS traversals in lock step, keeping only those that realize the
// smallest prefix. With `against`, stops as soon as the minimum departs from it.
bool min_search(const LabeledGraph& g, const Code* against, MinCodeResult* out) {
  const int total_edges = g.edge_count;
  if (total_edges == 0) throw Error(ErrorKind::Validation, "pattern has no edges");
  const auto n = static_cast<std::size_t>(g.vertex_count());

  Tuple best{};
  bool have = false;
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& a : g.adj[u]) {
      Tuple t{0, 1, g.label[u], a.label, g.label[static_cast<std::size_t>(a.to)]};
      if (!have || compare(t, best) < 0) {
        best = t;
        have = true;
      }
    }
  }
  if (against && best != (*against)[0]) return false;

  std::vector<State> states;
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& a : g.adj[u]) {
      Tuple t{0, 1, g.label[u], a.label, g.label[static_cast<std::size_t>(a.to)]};
      if (t != best) continue;
      State s;
      s.vmap = {static_cast<int>(u), a.to};
      s.inv.assign(n, -1);
      s.inv[u] = 0;
      s.inv[static_cast<std::size_t>(a.to)] = 1;
      s.used.assign(static_cast<std::size_t>(total_edges), 0);
      s.used[static_cast<std::size_t>(a.edge)] = 1;
      states.push_back(std::move(s));
    }
  }

  Code code{best};
  std::vector<char> on_rmp;
  while (static_cast<int>(code.size()) < total_edges) {
    const std::vector<int> rmp = rightmost_path(code);
    const int rm = rmp.front();
    const int next = vertex_count(code);
    on_rmp.assign(static_cast<std::size_t>(next), 0);
    for (int v : rmp) on_rmp[static_cast<std::size_t>(v)] = 1;

    auto for_each_ext = [&](const State& s, auto&& fn) {
      const int u = s.vmap[static_cast<std::size_t>(rm)];
      for (const auto& a : g.adj[static_cast<std::size_t>(u)]) {
        if (s.used[static_cast<std::size_t>(a.edge)]) continue;
        const int w = s.inv[static_cast<std::size_t>(a.to)];
        if (w >= 0 && w != rm && on_rmp[static_cast<std::size_t>(w)]) {
          fn(Tuple{rm, w, g.label[static_cast<std::size_t>(u)], a.label, g.label[static_cast<std::size_t>(a.to)]}, a);
        }
      }
      for (int v : rmp) {
        const int x = s.vmap[static_cast<std::size_t>(v)];
        for (const auto& a : g.adj[static_cast<std::size_t>(x)]) {
          if (s.inv[static_cast<std::size_t>(a.to)] < 0) {
            fn(Tuple{v, next, g.label[static_cast<std::size_t>(x)], a.label, g.label[static_cast<std::size_t>(a.to)]}, a);
          }
        }
      }
    };

    have = false;
    for (const State& s : states) {
      for_each_ext(s, [&](const Tuple& t, const LabeledGraph::Adj&) {
        if (!have || compare(t, best) < 0) {
          best = t;
          have = true;
        }
      });
    }
    if (!have) throw Error(ErrorKind::Validation, "pattern graph is disconnected");
    if (against && best != (*against)[code.size()]) return false;

    std::vector<State> next_states;
    for (const State& s : states) {
      for_each_ext(s, [&](const Tuple& t, const LabeledGraph::Adj& a) {
        if (t != best) return;
        State c = s;
        c.used[static_cast<std::size_t>(a.edge)] = 1;
        if (t.forward()) {
          c.vmap.push_back(a.to);
          c.inv[static_cast<std::size_t>(a.to)] = t.j;
        }
        next_states.push_back(std::move(c));
      });
    }
    states = std::move(next_states);
    code.push_back(best);
  }
  if (states.front().vmap.size() != n) {
    throw Error(ErrorKind::Validation, "pattern graph is disconnected");
  }
  if (out) {
    out->code = std::move(code);
    out->vmap = states.front().vmap;
  }
  return true;
}

}  // namespace

MinCodeResult min_code(const LabeledGraph& pattern) {
  MinCodeResult r;
  min_search(pattern, nullptr, &r);
  return r;
}

bool is_min(const Code& code) {
  validate_code(code);
  return min_search(graph_of(code), &code, nullptr);
}

}  // namespace dtgraph::detail
