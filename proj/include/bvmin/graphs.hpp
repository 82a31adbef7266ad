#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bvmin {

// Tree shape with unlabelled leaves. A node with no children is a leaf;
// every internal node has at least two children.
struct RootedTree {
  std::vector<RootedTree> sub;

  bool leaf() const { return sub.empty(); }
  int leaves() const;
};

// Canonical serialization; equal strings mean isomorphic shapes.
std::string encode(const RootedTree& t);

// Order of the symmetry group: permutations of equal child subtrees.
long tree_automorphisms(const RootedTree& t);

// All shapes with the given number of leaves, each exactly once. Vertex
// valence (children plus the edge toward the root) is capped by max_valence.
std::vector<RootedTree> enumerate_trees(int n_leaves, int max_valence);

// Connected multigraph with per-vertex genus tags and unlabelled legs.
struct StableGraph {
  std::vector<int> genus;                  // 0 or 1 per vertex
  std::vector<int> legs;                   // external half-edges at each vertex
  std::vector<std::pair<int, int>> edges;  // unordered pairs; loops as (v, v)

  int n_vertices() const { return int(genus.size()); }
  int n_legs() const;
  int valence(int v) const;
  int betti() const;
  int hbar_order() const;
};

// Connected, genus-0 vertices at least trivalent, genus-1 vertices attached,
// total hbar order at most 1.
bool graph_valid(const StableGraph& g);

// Least relabelling under vertex permutations; equal keys mean isomorphic.
std::string canonical_key(const StableGraph& g);

// Half-edge symmetries: vertex permutations preserving the structure, free
// permutations of legs and of parallel edges, flips of loops.
long automorphism_order(const StableGraph& g);

// The factor of automorphism_order that fixes every vertex.
long half_edge_symmetries(const StableGraph& g);

// Isomorphism classes of stable graphs with the given legs and hbar order,
// every vertex valence at most max_valence. Order 0 lists the trees; order 1
// adds either one cycle or one genus-1 vertex.
std::vector<StableGraph> enumerate_graphs(int n_legs, int hbar, int max_valence);

std::vector<StableGraph> enumerate_order1_graphs(int n_legs, int max_valence);

}  // namespace bvmin
