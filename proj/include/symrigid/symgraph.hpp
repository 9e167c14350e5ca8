#pragma once

#include "symrigid/groups.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace symrigid {

struct Edge {
  int u = 0;
  int v = 0;
  bool operator==(const Edge&) const = default;
};

// Simple undirected graph; edges are stored with u < v.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;

  Graph() = default;
  Graph(int vertices, const std::vector<std::pair<int, int>>& pairs);

  int num_edges() const { return static_cast<int>(edges.size()); }
  // Index of edge {a, b} or -1.
  int find_edge(int a, int b) const;
  void add_edge(int a, int b);
  bool is_connected() const;
};

Graph complete_graph(int n);

using Perm = std::vector<int>;

struct SymmetricGraph {
  Graph graph;
  SymmetryGroup group;
  std::vector<Perm> action;  // action[g][v]

  bool free_on_vertices() const;
  // Orbits in order of their smallest vertex; each orbit sorted.
  std::vector<std::vector<int>> orbits() const;
  std::vector<int> stabilizer(int v) const;
  // Smallest element g with action[g][from] == to, or -1.
  int transporter(int from, int to) const;
};

// Closes one permutation per group generator into a full action and checks it.
SymmetricGraph make_symmetric_graph(Graph graph, SymmetryGroup group,
                                    const std::vector<Perm>& generator_perms);
// Same checks for an action given on every element.
SymmetricGraph make_symmetric_graph_full(Graph graph, SymmetryGroup group, std::vector<Perm> action);
SymmetricGraph trivially_symmetric(Graph graph, int dim);

struct FixedCount {
  int element = 0;
  int fixed_vertices = 0;
  int fixed_edges = 0;
};
std::vector<FixedCount> fixed_counts(const SymmetricGraph& sg);

struct GainEdge {
  int tail = 0;
  int head = 0;
  int gain = 0;
  bool is_loop() const { return tail == head; }
  bool operator==(const GainEdge&) const = default;
};

struct GainGraph {
  int n = 0;
  std::vector<GainEdge> edges;
  SymmetryGroup group;
  int num_edges() const { return static_cast<int>(edges.size()); }
};

// Bookkeeping that relates a symmetric graph to its quotient: vertex v equals
// label[v] applied to representative[orbit[v]].
struct QuotientMap {
  std::vector<int> representative;
  std::vector<int> orbit;
  std::vector<int> label;
  std::vector<int> edge_orbit;  // quotient edge index of each original edge
};

GainGraph quotient_gain_graph(const SymmetricGraph& sg, QuotientMap* map = nullptr);

// Vertex (i, g) of the lift has index i * |group| + g.
SymmetricGraph lift(const GainGraph& gg);

// Relabel gains by a potential phi: gain(e) -> phi(tail)^-1 gain(e) phi(head).
GainGraph switch_gains(const GainGraph& gg, const std::vector<int>& potential);

bool is_balanced(const GainGraph& gg, const std::vector<int>& edge_subset, int root_hint = -1);

struct SparsityVerdict {
  bool sparse = true;
  bool tight = false;
  std::vector<int> violating;  // a minimum-cardinality violating subset when !sparse
};

// Exact (k,l,m)-gain-sparsity by subset enumeration over `subset` (all edges
// when empty). Requires k >= 1 and 0 <= m <= l <= 2k-1.
SparsityVerdict is_gain_sparse(const GainGraph& gg, int k, int l, int m);
SparsityVerdict is_gain_sparse(const GainGraph& gg, const std::vector<int>& subset, int k, int l, int m);

// Spanning (k,l,m)-gain-tight subgraph as sorted edge indices, or nothing.
std::optional<std::vector<int>> has_spanning_gain_tight(const GainGraph& gg, int k, int l, int m);

// Plain (k,l)-sparsity / tightness of a simple graph via the pebble game.
bool is_kl_sparse(const Graph& g, int k, int l);
bool is_kl_tight(const Graph& g, int k, int l);

}  // namespace symrigid
