#include "symrigid/symgraph.hpp"

#include "symrigid/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>

namespace symrigid {

Graph::Graph(int vertices, const std::vector<std::pair<int, int>>& pairs) : n(vertices) {
  for (auto [a, b] : pairs) add_edge(a, b);
}

int Graph::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].u == a && edges[i].v == b) return static_cast<int>(i);
  return -1;
}

void Graph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  if (a == b) throw Error(ErrorCode::InvalidArgument, "loops are not allowed in a simple graph");
  if (a > b) std::swap(a, b);
  if (find_edge(a, b) >= 0) throw Error(ErrorCode::InvalidArgument, "parallel edge");
  edges.push_back({a, b});
}

bool Graph::is_connected() const {
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  int comps = n;
  for (const Edge& e : edges) {
    int a = root(e.u), b = root(e.v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

Graph complete_graph(int n) {
  Graph g;
  g.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  return g;
}

bool SymmetricGraph::free_on_vertices() const {
  for (std::size_t g = 1; g < action.size(); ++g)
    for (int v = 0; v < graph.n; ++v)
      if (action[g][v] == v) return false;
  return true;
}

std::vector<std::vector<int>> SymmetricGraph::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(graph.n, 0);
  for (int v = 0; v < graph.n; ++v) {
    if (seen[v]) continue;
    std::set<int> orb;
    for (const Perm& p : action) orb.insert(p[v]);
    for (int w : orb) seen[w] = 1;
    out.emplace_back(orb.begin(), orb.end());
  }
  return out;
}

std::vector<int> SymmetricGraph::stabilizer(int v) const {
  std::vector<int> out;
  for (std::size_t g = 0; g < action.size(); ++g)
    if (action[g][v] == v) out.push_back(static_cast<int>(g));
  return out;
}

int SymmetricGraph::transporter(int from, int to) const {
  for (std::size_t g = 0; g < action.size(); ++g)
    if (action[g][from] == to) return static_cast<int>(g);
  return -1;
}

namespace {

void check_action(const Graph& graph, const SymmetryGroup& group, const std::vector<Perm>& action) {
  const int n = graph.n;
  if (static_cast<int>(action.size()) != group.order()) {
    throw Error(ErrorCode::ActionNotHomomorphism, "one permutation per group element required");
  }
  for (std::size_t g = 0; g < action.size(); ++g) {
    const Perm& p = action[g];
    if (static_cast<int>(p.size()) != n) throw Error(ErrorCode::NotAutomorphism, "permutation size differs from |V|");
    std::vector<char> hit(n, 0);
    for (int x : p) {
      if (x < 0 || x >= n || hit[x]) throw Error(ErrorCode::NotAutomorphism, "not a permutation of the vertices");
      hit[x] = 1;
    }
    for (const Edge& e : graph.edges) {
      if (graph.find_edge(p[e.u], p[e.v]) < 0) {
        throw Error(ErrorCode::NotAutomorphism, "element " + std::to_string(g) + " maps edge {" +
                                                    std::to_string(e.u) + "," + std::to_string(e.v) +
                                                    "} to a non-edge");
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (action[0][v] != v) throw Error(ErrorCode::ActionNotHomomorphism, "identity must act trivially");
  for (int a = 0; a < group.order(); ++a)
    for (int b = 0; b < group.order(); ++b) {
      const Perm& pab = action[group.mult(a, b)];
      for (int v = 0; v < n; ++v)
        if (pab[v] != action[a][action[b][v]]) {
          throw Error(ErrorCode::ActionNotHomomorphism, "action(gh) differs from action(g)action(h)");
        }
    }
}

}  // namespace

SymmetricGraph make_symmetric_graph(Graph graph, SymmetryGroup group, const std::vector<Perm>& generator_perms) {
  const auto& gens = group.generators();
  if (generator_perms.size() != gens.size()) {
    throw Error(ErrorCode::ActionNotHomomorphism, "expected " + std::to_string(gens.size()) +
                                                      " generator permutations, got " +
                                                      std::to_string(generator_perms.size()));
  }
  const int n = graph.n;
  for (const Perm& p : generator_perms)
    if (static_cast<int>(p.size()) != n) throw Error(ErrorCode::NotAutomorphism, "permutation size differs from |V|");
  std::vector<Perm> action(group.order());
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  action[0] = id;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int e = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const int p = group.mult(e, gens[i]);
      Perm composed(n);
      for (int v = 0; v < n; ++v) composed[v] = action[e][generator_perms[i][v]];
      if (action[p].empty()) {
        action[p] = std::move(composed);
        queue.push_back(p);
      } else if (action[p] != composed) {
        throw Error(ErrorCode::ActionNotHomomorphism, "generator permutations violate a group relation");
      }
    }
  }
  for (const Perm& p : action)
    if (p.empty()) throw Error(ErrorCode::ActionNotHomomorphism, "generators do not reach every element");
  check_action(graph, group, action);
  return SymmetricGraph{std::move(graph), std::move(group), std::move(action)};
}

SymmetricGraph make_symmetric_graph_full(Graph graph, SymmetryGroup group, std::vector<Perm> action) {
  check_action(graph, group, action);
  return SymmetricGraph{std::move(graph), std::move(group), std::move(action)};
}

SymmetricGraph trivially_symmetric(Graph graph, int dim) {
  SymmetryGroup g = trivial_group(dim);
  Perm id(graph.n);
  std::iota(id.begin(), id.end(), 0);
  return make_symmetric_graph_full(std::move(graph), std::move(g), {id});
}

std::vector<FixedCount> fixed_counts(const SymmetricGraph& sg) {
  std::vector<FixedCount> out;
  for (int g = 1; g < sg.group.order(); ++g) {
    FixedCount fc{g, 0, 0};
    const Perm& p = sg.action[g];
    for (int v = 0; v < sg.graph.n; ++v)
      if (p[v] == v) ++fc.fixed_vertices;
    for (const Edge& e : sg.graph.edges) {
      const bool both = p[e.u] == e.u && p[e.v] == e.v;
      const bool swapped = p[e.u] == e.v && p[e.v] == e.u;
      if (both || swapped) ++fc.fixed_edges;
    }
    out.push_back(fc);
  }
  return out;
}

GainGraph quotient_gain_graph(const SymmetricGraph& sg, QuotientMap* map) {
  if (!sg.free_on_vertices()) throw Error(ErrorCode::ActionNotFree, "gains are defined only for free actions");
  const SymmetryGroup& grp = sg.group;
  const int n = sg.graph.n;
  QuotientMap qm;
  qm.orbit.assign(n, -1);
  qm.label.assign(n, -1);
  for (const auto& orb : sg.orbits()) {
    const int id = static_cast<int>(qm.representative.size());
    const int rep = orb.front();
    qm.representative.push_back(rep);
    for (int g = 0; g < grp.order(); ++g) {
      const int w = sg.action[g][rep];
      qm.orbit[w] = id;
      qm.label[w] = g;
    }
  }
  GainGraph gg;
  gg.n = static_cast<int>(qm.representative.size());
  gg.group = grp;
  qm.edge_orbit.assign(sg.graph.num_edges(), -1);
  for (int ei = 0; ei < sg.graph.num_edges(); ++ei) {
    if (qm.edge_orbit[ei] >= 0) continue;
    const Edge& e = sg.graph.edges[ei];
    int u = e.u, w = e.v;
    if (qm.orbit[u] > qm.orbit[w]) std::swap(u, w);
    const int a = qm.label[u], b = qm.label[w];
    int gain = grp.mult(grp.inv(a), b);
    if (qm.orbit[u] == qm.orbit[w]) gain = std::min(gain, grp.inv(gain));
    const int qid = gg.num_edges();
    gg.edges.push_back({qm.orbit[u], qm.orbit[w], gain});
    for (const Perm& p : sg.action) {
      const int img = sg.graph.find_edge(p[e.u], p[e.v]);
      qm.edge_orbit[img] = qid;
    }
  }
  if (map) *map = std::move(qm);
  return gg;
}

SymmetricGraph lift(const GainGraph& gg) {
  const SymmetryGroup& grp = gg.group;
  const int order = grp.order();
  Graph g;
  g.n = gg.n * order;
  for (std::size_t ei = 0; ei < gg.edges.size(); ++ei) {
    const GainEdge& e = gg.edges[ei];
    if (e.tail < 0 || e.head < 0 || e.tail >= gg.n || e.head >= gg.n || e.gain < 0 || e.gain >= order) {
      throw Error(ErrorCode::InvalidArgument, "gain edge out of range");
    }
    if (e.is_loop() && e.gain == 0) throw Error(ErrorCode::InvalidArgument, "loop with identity gain");
    std::set<std::pair<int, int>> own;
    for (int h = 0; h < order; ++h) {
      int a = e.tail * order + h;
      int b = e.head * order + grp.mult(h, e.gain);
      if (a > b) std::swap(a, b);
      if (!own.insert({a, b}).second) continue;  // an involution loop meets each edge twice
      if (g.find_edge(a, b) >= 0) {
        throw Error(ErrorCode::InvalidArgument, "gain edges " + std::to_string(ei) + " lift to parallel edges");
      }
      g.edges.push_back({a, b});
    }
  }
  std::vector<Perm> action(order, Perm(g.n));
  for (int h = 0; h < order; ++h)
    for (int i = 0; i < gg.n; ++i)
      for (int x = 0; x < order; ++x) action[h][i * order + x] = i * order + grp.mult(h, x);
  return make_symmetric_graph_full(std::move(g), grp, std::move(action));
}

GainGraph switch_gains(const GainGraph& gg, const std::vector<int>& potential) {
  GainGraph out = gg;
  const SymmetryGroup& grp = gg.group;
  for (GainEdge& e : out.edges) {
    e.gain = grp.mult(grp.inv(potential[e.tail]), grp.mult(e.gain, potential[e.head]));
  }
  return out;
}

bool is_balanced(const GainGraph& gg, const std::vector<int>& edge_subset, int root_hint) {
  const SymmetryGroup& grp = gg.group;
  std::vector<std::vector<std::pair<int, int>>> adj(gg.n);  // (edge, other end)
  for (int ei : edge_subset) {
    const GainEdge& e = gg.edges[ei];
    if (e.is_loop()) {
      if (e.gain != 0) return false;
      continue;
    }
    adj[e.tail].push_back({ei, e.head});
    adj[e.head].push_back({ei, e.tail});
  }
  std::vector<int> phi(gg.n, -1);
  auto explore = [&](int root) {
    phi[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (auto [ei, y] : adj[x]) {
        const GainEdge& e = gg.edges[ei];
        // phi(head) = phi(tail) * gain
        const int expect = (e.tail == x) ? grp.mult(phi[x], e.gain) : grp.mult(phi[x], grp.inv(e.gain));
        if (phi[y] < 0) {
          phi[y] = expect;
          stack.push_back(y);
        } else if (phi[y] != expect) {
          return false;
        }
      }
    }
    return true;
  };
  if (root_hint >= 0 && root_hint < gg.n && !explore(root_hint)) return false;
  for (int v = 0; v < gg.n; ++v)
    if (phi[v] < 0 && !adj[v].empty() && !explore(v)) return false;
  return true;
}

namespace {

void check_params(int k, int l, int m) {
  if (k < 1 || m < 0 || m > l || l > 2 * k - 1) {
    throw Error(ErrorCode::InvalidArgument, "need k >= 1 and 0 <= m <= l <= 2k-1");
  }
}

struct SubsetChecker {
  const GainGraph& gg;
  int k, l, m;
  std::vector<std::uint64_t> vmask;

  SubsetChecker(const GainGraph& g, int k_, int l_, int m_) : gg(g), k(k_), l(l_), m(m_) {
    if (g.n > 64) throw Error(ErrorCode::InvalidArgument, "sparsity oracle supports at most 64 vertices");
    for (const GainEdge& e : g.edges) vmask.push_back((std::uint64_t{1} << e.tail) | (std::uint64_t{1} << e.head));
  }

  bool violates(const std::vector<int>& f) const {
    std::uint64_t mask = 0;
    for (int ei : f) mask |= vmask[ei];
    const int nv = std::popcount(mask);
    const int size = static_cast<int>(f.size());
    if (size > k * nv - m) return true;
    if (size > k * nv - l && is_balanced(gg, f)) return true;
    return false;
  }

  // Smallest violating subset of pool ∪ forced (forced always included),
  // enumerated by cardinality then lexicographically.
  std::optional<std::vector<int>> find_violation(const std::vector<int>& pool,
                                                 const std::vector<int>& forced) const {
    const int p = static_cast<int>(pool.size());
    if (p > 30) throw Error(ErrorCode::InvalidArgument, "sparsity oracle limited to 30 free edges");
    const int start = forced.empty() ? 1 : 0;
    for (int c = start; c <= p; ++c) {
      std::vector<int> idx(c);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<int> f = forced;
        for (int i : idx) f.push_back(pool[i]);
        if (violates(f)) {
          std::sort(f.begin(), f.end());
          return f;
        }
        int i = c - 1;
        while (i >= 0 && idx[i] == p - c + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

SparsityVerdict is_gain_sparse(const GainGraph& gg, const std::vector<int>& subset, int k, int l, int m) {
  check_params(k, l, m);
  SubsetChecker chk(gg, k, l, m);
  SparsityVerdict out;
  if (auto v = chk.find_violation(subset, {})) {
    out.sparse = false;
    out.violating = *v;
    return out;
  }
  out.sparse = true;
  out.tight = static_cast<int>(subset.size()) == k * gg.n - m;
  return out;
}

SparsityVerdict is_gain_sparse(const GainGraph& gg, int k, int l, int m) {
  std::vector<int> all(gg.num_edges());
  std::iota(all.begin(), all.end(), 0);
  return is_gain_sparse(gg, all, k, l, m);
}

std::optional<std::vector<int>> has_spanning_gain_tight(const GainGraph& gg, int k, int l, int m) {
  check_params(k, l, m);
  const int target = k * gg.n - m;
  const int total = gg.num_edges();
  if (target < 0 || target > total) return std::nullopt;
  SubsetChecker chk(gg, k, l, m);
  std::vector<int> chosen;
  // Include-first depth-first search. Its first descent is the greedy
  // augmentation; backtracking only runs when greedy stalls.
  std::function<bool(int)> dfs = [&](int next) -> bool {
    if (static_cast<int>(chosen.size()) == target) return true;
    if (static_cast<int>(chosen.size()) + (total - next) < target) return false;
    for (int e = next; e < total; ++e) {
      if (static_cast<int>(chosen.size()) + (total - e) < target) return false;
      if (!chk.find_violation(chosen, {e})) {
        chosen.push_back(e);
        if (dfs(e + 1)) return true;
        chosen.pop_back();
      }
    }
    return false;
  };
  if (dfs(0)) return chosen;
  return std::nullopt;
}

namespace {

// Pebble game for (k,l)-sparsity with 0 <= l < 2k. Returns accepted edge count.
class PebbleGame {
 public:
  PebbleGame(int n, int k, int l) : k_(k), l_(l), pebbles_(n, k), out_(n) {}

  bool insert(int u, int v) {
    while (pebbles_[u] + pebbles_[v] < l_ + 1) {
      if (!gather(u, v) && !gather(v, u)) return false;
    }
    int src = pebbles_[u] > 0 ? u : v;
    int dst = src == u ? v : u;
    --pebbles_[src];
    out_[src].push_back(dst);
    return true;
  }

 private:
  // Move one pebble to `to` without touching `keep`.
  bool gather(int to, int keep) {
    const int n = static_cast<int>(pebbles_.size());
    std::vector<int> prev(n, -2);
    prev[to] = -1;
    prev[keep] = -1;
    std::vector<int> stack{to};
    int found = -1;
    while (!stack.empty() && found < 0) {
      int x = stack.back();
      stack.pop_back();
      for (int y : out_[x]) {
        if (prev[y] != -2) continue;
        prev[y] = x;
        if (pebbles_[y] > 0) {
          found = y;
          break;
        }
        stack.push_back(y);
      }
    }
    if (found < 0) return false;
    // Reverse the path found -> to.
    int y = found;
    while (y != to) {
      int x = prev[y];
      auto& lst = out_[x];
      lst.erase(std::find(lst.begin(), lst.end(), y));
      out_[y].push_back(x);
      y = x;
    }
    --pebbles_[found];
    ++pebbles_[to];
    return true;
  }

  int k_, l_;
  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;
};

}  // namespace

bool is_kl_sparse(const Graph& g, int k, int l) {
  if (k < 1 || l < 0 || l >= 2 * k) throw Error(ErrorCode::InvalidArgument, "pebble game needs 0 <= l < 2k");
  PebbleGame game(g.n, k, l);
  for (const Edge& e : g.edges)
    if (!game.insert(e.u, e.v)) return false;
  return true;
}

bool is_kl_tight(const Graph& g, int k, int l) {
  return g.num_edges() == k * g.n - l && is_kl_sparse(g, k, l);
}

}  // namespace symrigid
