#include "bvmin/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bvmin {

int RootedTree::leaves() const {
  if (sub.empty()) return 1;
  int n = 0;
  for (const RootedTree& t : sub) n += t.leaves();
  return n;
}

std::string encode(const RootedTree& t) {
  if (t.leaf()) return "L";
  std::vector<std::string> parts;
  parts.reserve(t.sub.size());
  for (const RootedTree& c : t.sub) parts.push_back(encode(c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const std::string& p : parts) out += p;
  out += ")";
  return out;
}

long tree_automorphisms(const RootedTree& t) {
  if (t.leaf()) return 1;
  std::vector<std::string> keys;
  long order = 1;
  for (const RootedTree& c : t.sub) {
    keys.push_back(encode(c));
    order *= tree_automorphisms(c);
  }
  std::sort(keys.begin(), keys.end());
  for (size_t i = 0; i < keys.size();) {
    size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    for (size_t r = 2; r <= j - i; ++r) order *= long(r);
    i = j;
  }
  return order;
}

namespace {

// Shapes are built with children non-decreasing in (leaf count, list index),
// so every multiset of subtrees appears exactly once.
struct TreeGen {
  int max_children;
  std::map<int, std::vector<RootedTree>> cache;

  const std::vector<RootedTree>& shapes(int n) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<RootedTree> out;
    if (n == 1) {
      out.push_back(RootedTree{});
    } else {
      RootedTree cur;
      grow(n, n, 1, 0, cur, out);
    }
    return cache.emplace(n, std::move(out)).first->second;
  }

  void grow(int total, int remaining, int last_size, int last_idx,
            RootedTree& cur, std::vector<RootedTree>& out) {
    if (remaining == 0) {
      if (int(cur.sub.size()) >= 2) out.push_back(cur);
      return;
    }
    if (int(cur.sub.size()) >= max_children) return;
    for (int s = last_size; s <= remaining; ++s) {
      if (cur.sub.empty() && s == total) continue;
      const std::vector<RootedTree>& opts = shapes(s);
      int start = (s == last_size) ? last_idx : 0;
      for (int i = start; i < int(opts.size()); ++i) {
        cur.sub.push_back(opts[i]);
        grow(total, remaining - s, s, i, cur, out);
        cur.sub.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<RootedTree> enumerate_trees(int n_leaves, int max_valence) {
  if (n_leaves < 2) throw std::invalid_argument("enumerate_trees: need at least 2 leaves");
  TreeGen gen{max_valence - 1, {}};
  return gen.shapes(n_leaves);
}

int StableGraph::n_legs() const {
  return std::accumulate(legs.begin(), legs.end(), 0);
}

int StableGraph::valence(int v) const {
  int d = legs[v];
  for (const auto& [a, b] : edges) {
    if (a == v) ++d;
    if (b == v) ++d;
  }
  return d;
}

int StableGraph::betti() const {
  return int(edges.size()) - n_vertices() + 1;
}

int StableGraph::hbar_order() const {
  return betti() + std::accumulate(genus.begin(), genus.end(), 0);
}

namespace {

bool connected(const StableGraph& g) {
  int n = g.n_vertices();
  if (n == 0) return false;
  std::vector<int> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : g.edges) {
      if (a == v && !seen[b]) { seen[b] = 1; stack.push_back(b); }
      if (b == v && !seen[a]) { seen[a] = 1; stack.push_back(a); }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

std::vector<std::pair<int, int>> sorted_edges(const StableGraph& g) {
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) es.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(es.begin(), es.end());
  return es;
}

std::string render(const std::vector<int>& genus, const std::vector<int>& legs,
                   const std::vector<std::pair<int, int>>& es) {
  std::string out;
  for (size_t v = 0; v < genus.size(); ++v)
    out += std::to_string(genus[v]) + ":" + std::to_string(legs[v]) + ";";
  out += "/";
  for (const auto& [a, b] : es)
    out += std::to_string(a) + "-" + std::to_string(b) + ";";
  return out;
}

}  // namespace

bool graph_valid(const StableGraph& g) {
  int n = g.n_vertices();
  if (n == 0 || int(g.legs.size()) != n) return false;
  for (int v = 0; v < n; ++v) {
    if (g.genus[v] != 0 && g.genus[v] != 1) return false;
    if (g.legs[v] < 0) return false;
  }
  for (const auto& [a, b] : g.edges)
    if (a < 0 || a >= n || b < 0 || b >= n) return false;
  if (!connected(g)) return false;
  for (int v = 0; v < n; ++v) {
    int need = g.genus[v] == 0 ? 3 : 1;
    if (g.valence(v) < need) return false;
  }
  return g.hbar_order() >= 0 && g.hbar_order() <= 1;
}

std::string canonical_key(const StableGraph& g) {
  int n = g.n_vertices();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<int> inv(n);
    for (int j = 0; j < n; ++j) inv[perm[j]] = j;
    std::vector<int> genus(n), legs(n);
    for (int j = 0; j < n; ++j) {
      genus[j] = g.genus[perm[j]];
      legs[j] = g.legs[perm[j]];
    }
    std::vector<std::pair<int, int>> es;
    es.reserve(g.edges.size());
    for (const auto& [a, b] : g.edges) {
      int u = inv[a], v = inv[b];
      es.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(es.begin(), es.end());
    std::string key = render(genus, legs, es);
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

long automorphism_order(const StableGraph& g) {
  int n = g.n_vertices();
  std::vector<std::pair<int, int>> base = sorted_edges(g);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long vertex_maps = 0;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      ok = g.genus[v] == g.genus[perm[v]] && g.legs[v] == g.legs[perm[v]];
    if (ok) {
      std::vector<std::pair<int, int>> es;
      es.reserve(g.edges.size());
      for (const auto& [a, b] : g.edges) {
        int u = perm[a], v = perm[b];
        es.emplace_back(std::min(u, v), std::max(u, v));
      }
      std::sort(es.begin(), es.end());
      ok = es == base;
    }
    if (ok) ++vertex_maps;
  } while (std::next_permutation(perm.begin(), perm.end()));

  return vertex_maps * half_edge_symmetries(g);
}

long half_edge_symmetries(const StableGraph& g) {
  long half_edge = 1;
  for (int v = 0; v < g.n_vertices(); ++v)
    for (int r = 2; r <= g.legs[v]; ++r) half_edge *= long(r);
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : sorted_edges(g)) ++mult[e];
  for (const auto& [e, m] : mult) {
    for (int r = 2; r <= m; ++r) half_edge *= long(r);
    if (e.first == e.second)
      for (int r = 0; r < m; ++r) half_edge *= 2;
  }
  return half_edge;
}

namespace {

// All ways to write n as bounded non-negative parts.
void compositions(int n, const std::vector<int>& lo, const std::vector<int>& hi,
                  size_t at, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (at == lo.size()) {
    if (n == 0) out.push_back(cur);
    return;
  }
  int rest_lo = 0;
  for (size_t v = at + 1; v < lo.size(); ++v) rest_lo += lo[v];
  for (int k = lo[at]; k <= std::min(hi[at], n - rest_lo); ++k) {
    cur[at] = k;
    compositions(n - k, lo, hi, at + 1, cur, out);
  }
  cur[at] = 0;
}

// Edge multisets of a fixed size over the slots (u <= v), loops included.
void edge_multisets(int n_vertices, int count, bool loops,
                    std::vector<std::pair<int, int>>& slots_out,
                    std::vector<std::vector<int>>& out) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n_vertices; ++u)
    for (int v = u; v < n_vertices; ++v)
      if (u != v || loops) slots.emplace_back(u, v);
  std::vector<int> cur(slots.size(), 0);
  struct Rec {
    const std::vector<std::pair<int, int>>& slots;
    std::vector<std::vector<int>>& out;
    std::vector<int>& cur;
    void go(size_t at, int remaining) {
      if (at == slots.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
      }
      for (int k = 0; k <= remaining; ++k) {
        cur[at] = k;
        go(at + 1, remaining - k);
      }
      cur[at] = 0;
    }
  } rec{slots, out, cur};
  rec.go(0, count);
  slots_out = slots;
}

void emit_family(int n_legs, int n_vertices, int n_edges, int g1_count,
                 bool loops, int max_valence, std::set<std::string>& seen,
                 std::vector<StableGraph>& out) {
  std::vector<std::pair<int, int>> slots;
  std::vector<std::vector<int>> edge_choices;
  edge_multisets(n_vertices, n_edges, loops, slots, edge_choices);
  for (const std::vector<int>& counts : edge_choices) {
    StableGraph g;
    g.genus.assign(n_vertices, 0);
    g.legs.assign(n_vertices, 0);
    for (size_t i = 0; i < slots.size(); ++i)
      for (int k = 0; k < counts[i]; ++k) g.edges.push_back(slots[i]);
    if (!connected(g)) continue;
    std::vector<int> deg(n_vertices, 0);
    for (const auto& [a, b] : g.edges) {
      ++deg[a];
      ++deg[b];
    }
    for (int mark = g1_count == 0 ? -1 : 0; mark < (g1_count == 0 ? 0 : n_vertices);
         ++mark) {
      g.genus.assign(n_vertices, 0);
      if (mark >= 0) g.genus[mark] = 1;
      std::vector<int> lo(n_vertices), hi(n_vertices);
      bool feasible = true;
      for (int v = 0; v < n_vertices; ++v) {
        int need = g.genus[v] == 0 ? 3 : 1;
        lo[v] = std::max(0, need - deg[v]);
        hi[v] = max_valence - deg[v];
        if (hi[v] < lo[v]) feasible = false;
      }
      if (!feasible) continue;
      std::vector<int> cur(n_vertices, 0);
      std::vector<std::vector<int>> leg_choices;
      compositions(n_legs, lo, hi, 0, cur, leg_choices);
      for (const std::vector<int>& legs : leg_choices) {
        g.legs = legs;
        if (!graph_valid(g)) continue;
        if (seen.insert(canonical_key(g)).second) out.push_back(g);
      }
    }
  }
}

}  // namespace

std::vector<StableGraph> enumerate_graphs(int n_legs, int hbar, int max_valence) {
  if (n_legs < 0) throw std::invalid_argument("enumerate_graphs: negative legs");
  if (hbar != 0 && hbar != 1)
    throw std::invalid_argument("enumerate_graphs: hbar order must be 0 or 1");
  std::vector<StableGraph> out;
  std::set<std::string> seen;
  if (hbar == 0) {
    for (int v = 1; v <= n_legs - 2; ++v)
      emit_family(n_legs, v, v - 1, 0, false, max_valence, seen, out);
  } else {
    for (int v = 1; v <= n_legs; ++v)
      emit_family(n_legs, v, v, 0, true, max_valence, seen, out);
    for (int v = 1; v <= n_legs; ++v)
      emit_family(n_legs, v, v - 1, 1, false, max_valence, seen, out);
  }
  return out;
}

std::vector<StableGraph> enumerate_order1_graphs(int n_legs, int max_valence) {
  return enumerate_graphs(n_legs, 1, max_valence);
}

}  // namespace bvmin
