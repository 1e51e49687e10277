#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncminor/graph.hpp"

namespace ncminor {

// Branch sets of a minor embedding: pattern node -> connected host node set.
using MinorWitness = std::map<NodeId, std::vector<NodeId>>;

inline SimpleGraph delete_edge(const SimpleGraph& g, const NodeId& u,
                               const NodeId& v) {
  if (!g.has_edge(u, v))
    throw Error(ErrorKind::precondition, "edge " + u + "-" + v + " not in graph");
  auto norm = std::minmax(u, v);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : g.edges())
    if (e != std::pair<NodeId, NodeId>(norm.first, norm.second))
      edges.push_back(e);
  return make_graph(g.nodes(), std::move(edges));
}

// Merges v into u; the merged node keeps the smaller id.
inline SimpleGraph contract_edge(const SimpleGraph& g, const NodeId& u,
                                 const NodeId& v) {
  if (!g.has_edge(u, v))
    throw Error(ErrorKind::precondition, "edge " + u + "-" + v + " not in graph");
  auto [keep, gone] = std::minmax(u, v);
  std::vector<NodeId> nodes;
  for (const NodeId& w : g.nodes())
    if (w != gone) nodes.push_back(w);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (auto e : g.edges()) {
    if (e.first == gone) e.first = keep;
    if (e.second == gone) e.second = keep;
    if (e.first == e.second) continue;
    edges.push_back(e);
  }
  return make_graph(std::move(nodes), std::move(edges));
}

namespace detail {

// Working graph for the series-parallel reduction, with branch-set tracking
// so a stuck kernel maps back to host nodes.
struct ReduceState {
  std::vector<NodeId> ids;
  std::vector<std::set<int>> adj;      // indices
  std::vector<char> alive;
  std::vector<std::set<int>> branch;   // merged original indices

  explicit ReduceState(const SimpleGraph& g) {
    ids = g.nodes();
    std::map<NodeId, int> index;
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) index[ids[i]] = i;
    adj.resize(ids.size());
    alive.assign(ids.size(), 1);
    branch.resize(ids.size());
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) branch[i] = {i};
    for (const auto& e : g.edges()) {
      int a = index.at(e.first), b = index.at(e.second);
      adj[a].insert(b);
      adj[b].insert(a);
    }
  }

  void drop(int v) {
    for (int u : adj[v]) adj[u].erase(v);
    adj[v].clear();
    alive[v] = 0;
  }

  // Contract edge (keep, gone): gone's neighbours and branch move to keep.
  void contract(int keep, int gone) {
    adj[keep].erase(gone);
    adj[gone].erase(keep);
    for (int w : adj[gone]) {
      adj[w].erase(gone);
      adj[w].insert(keep);
      adj[keep].insert(w);
    }
    adj[gone].clear();
    alive[gone] = 0;
    branch[keep].insert(branch[gone].begin(), branch[gone].end());
  }

  // Removes degree-<=1 nodes and suppresses degree-2 nodes until none are
  // left. Degree-2 suppression contracts toward a neighbour; when the two
  // neighbours are already adjacent the node is simply dropped.
  void reduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < static_cast<int>(ids.size()); ++v) {
        if (!alive[v]) continue;
        std::size_t deg = adj[v].size();
        if (deg <= 1) {
          drop(v);
          changed = true;
        } else if (deg == 2) {
          int a = *adj[v].begin();
          int b = *std::next(adj[v].begin());
          if (adj[a].count(b)) {
            drop(v);
          } else {
            contract(std::min(a, b), v);
            adj[std::min(a, b)].insert(std::max(a, b));
            adj[std::max(a, b)].insert(std::min(a, b));
          }
          changed = true;
        }
      }
    }
  }

  int alive_count() const {
    int n = 0;
    for (char a : alive) n += a;
    return n;
  }

  std::vector<int> alive_nodes() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(ids.size()); ++v)
      if (alive[v]) out.push_back(v);
    return out;
  }
};

}  // namespace detail

// A graph is K4-minor-free exactly when the series-parallel reduction
// consumes every component.
inline bool has_k4_minor(const SimpleGraph& g) {
  detail::ReduceState state(g);
  state.reduce();
  return state.alive_count() > 0;
}

namespace detail {

// Shrinks a stuck kernel to exactly K4 by trying contract-then-delete per
// edge, keeping whichever leaves a non-empty reduction. Every step keeps a
// valid branch mapping, so the final four sets witness the minor.
inline bool shrink_to_k4(ReduceState& state) {
  state.reduce();
  int n = state.alive_count();
  if (n == 0) return false;
  if (n == 4) return true;  // stuck kernel with min degree 3 on 4 nodes = K4

  std::vector<std::pair<int, int>> edges;
  for (int v : state.alive_nodes())
    for (int u : state.adj[v])
      if (v < u) edges.emplace_back(v, u);

  for (const auto& [x, y] : edges) {
    {
      ReduceState trial = state;
      trial.contract(x, y);
      if (shrink_to_k4(trial)) {
        state = std::move(trial);
        return true;
      }
    }
    {
      ReduceState trial = state;
      trial.adj[x].erase(y);
      trial.adj[y].erase(x);
      if (shrink_to_k4(trial)) {
        state = std::move(trial);
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

// K4 witness for any graph size; returns nothing when K4-minor-free.
inline std::optional<MinorWitness> find_k4_witness(const SimpleGraph& g) {
  detail::ReduceState state(g);
  if (!detail::shrink_to_k4(state)) return std::nullopt;
  MinorWitness w;
  int label = 0;
  for (int v : state.alive_nodes()) {
    std::vector<NodeId> set;
    for (int i : state.branch[v]) set.push_back(state.ids[i]);
    std::sort(set.begin(), set.end());
    w[std::to_string(label++)] = std::move(set);
  }
  return w;
}

// Structural check of a witness: disjoint nonempty branch sets, each
// inducing a connected subgraph, with a host edge for every pattern edge.
inline bool verify_minor_witness(const SimpleGraph& g, const SimpleGraph& pattern,
                                 const MinorWitness& w) {
  std::set<NodeId> used;
  for (const NodeId& p : pattern.nodes()) {
    auto it = w.find(p);
    if (it == w.end() || it->second.empty()) return false;
    for (const NodeId& v : it->second) {
      if (!g.has_node(v)) return false;
      if (!used.insert(v).second) return false;
    }
    // connectivity of the induced branch set
    std::set<NodeId> branch(it->second.begin(), it->second.end());
    std::vector<NodeId> stack{it->second.front()};
    std::set<NodeId> seen{it->second.front()};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const NodeId& u : g.neighbors(v))
        if (branch.count(u) && seen.insert(u).second) stack.push_back(u);
    }
    if (seen.size() != branch.size()) return false;
  }
  for (const auto& [pu, pv] : pattern.edges()) {
    bool crossed = false;
    for (const NodeId& a : w.at(pu)) {
      for (const NodeId& b : w.at(pv))
        if (g.has_edge(a, b)) {
          crossed = true;
          break;
        }
      if (crossed) break;
    }
    if (!crossed) return false;
  }
  return true;
}

namespace detail {

// Exhaustive branch-set search over bitmask subsets; callers bound the size.
inline std::optional<MinorWitness> brute_minor_search(const SimpleGraph& g,
                                                      const SimpleGraph& m) {
  int n = static_cast<int>(g.nodes().size());
  int k = static_cast<int>(m.nodes().size());
  if (k == 0) return MinorWitness{};
  if (k > n) return std::nullopt;

  std::vector<std::uint32_t> adj(n, 0);
  {
    std::map<NodeId, int> index;
    for (int i = 0; i < n; ++i) index[g.nodes()[i]] = i;
    for (const auto& e : g.edges()) {
      int a = index.at(e.first), b = index.at(e.second);
      adj[a] |= 1u << b;
      adj[b] |= 1u << a;
    }
  }
  std::vector<std::vector<char>> medge(k, std::vector<char>(k, 0));
  {
    std::map<NodeId, int> index;
    for (int i = 0; i < k; ++i) index[m.nodes()[i]] = i;
    for (const auto& e : m.edges()) {
      int a = index.at(e.first), b = index.at(e.second);
      medge[a][b] = medge[b][a] = 1;
    }
  }
  bool complete = true;
  for (int i = 0; i < k && complete; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!medge[i][j]) {
        complete = false;
        break;
      }

  auto connected = [&](std::uint32_t mask) {
    std::uint32_t start = mask & (~mask + 1);
    std::uint32_t seen = start;
    std::uint32_t frontier = start;
    while (frontier) {
      std::uint32_t next = 0;
      for (int v = 0; v < n; ++v)
        if (frontier & (1u << v)) next |= adj[v] & mask;
      next &= ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == mask;
  };
  auto nbr_mask = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) out |= adj[v];
    return out;
  };

  std::vector<std::uint32_t> sets(k, 0);
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  std::function<bool(int, std::uint32_t)> place = [&](int c,
                                                      std::uint32_t used) {
    if (c == k) return true;
    std::uint32_t free = full & ~used;
    if (static_cast<int>(std::popcount(free)) < k - c) return false;
    for (std::uint32_t sub = free; sub; sub = (sub - 1) & free) {
      if (complete && c > 0) {
        // branch sets of a clique pattern are interchangeable
        if ((sub & (~sub + 1)) < (sets[c - 1] & (~sets[c - 1] + 1))) continue;
      }
      bool ok = true;
      for (int j = 0; j < c && ok; ++j)
        if (medge[j][c] && !(nbr_mask(sets[j]) & sub)) ok = false;
      if (!ok || !connected(sub)) continue;
      sets[c] = sub;
      if (place(c + 1, used | sub)) return true;
    }
    return false;
  };

  if (!place(0, 0)) return std::nullopt;

  MinorWitness w;
  for (int c = 0; c < k; ++c) {
    std::vector<NodeId> set;
    for (int v = 0; v < n; ++v)
      if (sets[c] & (1u << v)) set.push_back(g.nodes()[v]);
    w[m.nodes()[c]] = std::move(set);
  }
  return w;
}

}  // namespace detail

inline SimpleGraph complete_graph(int k) {
  std::vector<NodeId> nodes;
  for (int i = 0; i < k; ++i) nodes.push_back(std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      edges.emplace_back(nodes[i], nodes[j]);
  return make_graph(std::move(nodes), std::move(edges));
}

struct CliqueMinorResult {
  bool found = false;
  MinorWitness witness;
};

// Exhaustive clique-minor test, desk scale only.
inline CliqueMinorResult has_clique_minor(const SimpleGraph& g, int k,
                                          int node_bound = 12) {
  if (static_cast<int>(g.nodes().size()) > node_bound)
    throw Error(ErrorKind::bound, "graph above clique-minor search bound of " +
                                      std::to_string(node_bound) + " nodes");
  CliqueMinorResult res;
  auto w = detail::brute_minor_search(g, complete_graph(k));
  if (w) {
    res.found = true;
    res.witness = *w;
  }
  return res;
}

// Tree of bags; width = max bag size - 1.
struct TreeDecomposition {
  std::vector<std::vector<NodeId>> bags;       // each sorted
  std::vector<std::pair<int, int>> tree_edges;
  int width = -1;
};

struct TreeDecompositionReport {
  bool ok = false;
  std::string violation;  // "P1", "P2", "P3", "tree", or "width"
};

inline TreeDecompositionReport verify_tree_decomposition(
    const SimpleGraph& g, const TreeDecomposition& td_in, int max_width = 2) {
  TreeDecompositionReport rep;
  TreeDecomposition td = td_in;
  for (auto& bag : td.bags) std::sort(bag.begin(), bag.end());
  int nb = static_cast<int>(td.bags.size());

  // tree-ness over bag indices
  if (nb == 0) {
    if (!g.nodes().empty()) {
      rep.violation = "P1: empty decomposition for non-empty graph";
      return rep;
    }
    rep.ok = true;
    return rep;
  }
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) {
    rep.violation = "tree: edge count is not bags-1";
    return rep;
  }
  std::vector<std::vector<int>> nbr(nb);
  for (const auto& [a, b] : td.tree_edges) {
    if (a < 0 || a >= nb || b < 0 || b >= nb || a == b) {
      rep.violation = "tree: bad edge index";
      return rep;
    }
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  {
    std::vector<char> seen(nb, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : nbr[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != nb) {
      rep.violation = "tree: bags not connected";
      return rep;
    }
  }

  // P1: bags cover exactly the graph's nodes
  std::set<NodeId> covered;
  int width = -1;
  for (const auto& bag : td.bags) {
    for (const NodeId& v : bag) {
      if (!g.has_node(v)) {
        rep.violation = "P1: bag contains unknown node " + v;
        return rep;
      }
      covered.insert(v);
    }
    width = std::max(width, static_cast<int>(bag.size()) - 1);
  }
  if (covered.size() != g.nodes().size()) {
    rep.violation = "P1: some vertex appears in no bag";
    return rep;
  }

  // P2: each edge internal to some bag
  for (const auto& [u, v] : g.edges()) {
    bool inside = false;
    for (const auto& bag : td.bags) {
      if (std::binary_search(bag.begin(), bag.end(), u) &&
          std::binary_search(bag.begin(), bag.end(), v)) {
        inside = true;
        break;
      }
    }
    if (!inside) {
      rep.violation = "P2: edge " + u + "-" + v + " in no bag";
      return rep;
    }
  }

  // P3: bags containing each vertex form a subtree
  for (const NodeId& v : g.nodes()) {
    std::vector<int> holds;
    for (int i = 0; i < nb; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v))
        holds.push_back(i);
    if (holds.empty()) continue;
    std::set<int> want(holds.begin(), holds.end());
    std::set<int> seen{holds[0]};
    std::vector<int> stack{holds[0]};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : nbr[x])
        if (want.count(y) && seen.insert(y).second) stack.push_back(y);
    }
    if (seen.size() != want.size()) {
      rep.violation = "P3: bags containing " + v + " are disconnected";
      return rep;
    }
  }

  if (width > max_width || td.width != width) {
    rep.violation = "width: bound exceeded or mismatch";
    return rep;
  }
  rep.ok = true;
  return rep;
}

// Width-2 tree decomposition from the series-parallel elimination order;
// empty result when the graph has a K4 minor. Bags fully contained in a
// neighbouring bag are spliced away.
inline std::optional<TreeDecomposition> tree_decomposition_w2(
    const SimpleGraph& g) {
  int n = static_cast<int>(g.nodes().size());
  if (n == 0) return TreeDecomposition{};

  std::map<NodeId, int> index;
  for (int i = 0; i < n; ++i) index[g.nodes()[i]] = i;
  std::vector<std::set<int>> adj(n);
  for (const auto& e : g.edges()) {
    adj[index.at(e.first)].insert(index.at(e.second));
    adj[index.at(e.second)].insert(index.at(e.first));
  }

  std::vector<char> alive(n, 1);
  std::vector<int> elim_pos(n, -1);
  std::vector<std::vector<int>> elim_nbrs(n);
  std::vector<int> order;

  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v] && adj[v].size() <= 2) {
        pick = v;
        break;
      }
    if (pick == -1) return std::nullopt;  // stuck: K4 minor present
    elim_pos[pick] = step;
    elim_nbrs[pick] = std::vector<int>(adj[pick].begin(), adj[pick].end());
    order.push_back(pick);
    if (adj[pick].size() == 2) {
      int a = elim_nbrs[pick][0], b = elim_nbrs[pick][1];
      adj[a].insert(b);
      adj[b].insert(a);
    }
    for (int u : elim_nbrs[pick]) adj[u].erase(pick);
    adj[pick].clear();
    alive[pick] = 0;
  }

  // Bag per vertex: itself plus its elimination neighbourhood. Parent: the
  // bag of the first-eliminated neighbour; component roots chain together.
  std::vector<int> parent(n, -1);
  int prev_root = -1;
  for (int v : order) {
    if (elim_nbrs[v].empty()) {
      parent[v] = prev_root;  // may stay -1 for the very first root
      prev_root = v;
      continue;
    }
    int first = elim_nbrs[v][0];
    for (int u : elim_nbrs[v])
      if (elim_pos[u] < elim_pos[first]) first = u;
    parent[v] = first;
  }

  // Splice away bags contained in their parent bag (or a child bag when the
  // parent relation points the other way after chaining).
  std::vector<std::set<NodeId>> bags(n);
  for (int v = 0; v < n; ++v) {
    bags[v].insert(g.nodes()[v]);
    for (int u : elim_nbrs[v]) bags[v].insert(g.nodes()[u]);
  }
  std::vector<char> keep(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!keep[v] || parent[v] == -1) continue;
      int p = parent[v];
      if (std::includes(bags[p].begin(), bags[p].end(), bags[v].begin(),
                        bags[v].end())) {
        // child absorbed by parent
        keep[v] = 0;
        for (int w = 0; w < n; ++w)
          if (w != v && parent[w] == v) parent[w] = p;
        changed = true;
      } else if (std::includes(bags[v].begin(), bags[v].end(),
                               bags[p].begin(), bags[p].end())) {
        // parent absorbed by child: v takes the parent's slot
        keep[p] = 0;
        parent[v] = parent[p];
        for (int w = 0; w < n; ++w)
          if (w != p && w != v && parent[w] == p) parent[w] = v;
        changed = true;
      }
    }
  }

  TreeDecomposition td;
  std::vector<int> bag_id(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    bag_id[v] = static_cast<int>(td.bags.size());
    td.bags.emplace_back(bags[v].begin(), bags[v].end());
    td.width = std::max(td.width, static_cast<int>(bags[v].size()) - 1);
  }
  for (int v = 0; v < n; ++v) {
    if (!keep[v] || parent[v] == -1) continue;
    td.tree_edges.emplace_back(bag_id[v], bag_id[parent[v]]);
  }
  return td;
}

// Rooted, normalized form used by the packing recursion: every non-root bag
// introduces exactly one vertex absent from its parent.
struct RootedDecomposition {
  std::vector<std::vector<NodeId>> bags;  // each sorted
  std::vector<int> parent;                // -1 at the root
  int root = 0;
};

inline RootedDecomposition normalize_rooted(const TreeDecomposition& td,
                                            const NodeId& root_node) {
  struct B {
    std::set<NodeId> nodes;
    int parent = -1;
    bool alive = true;
  };
  std::vector<B> bags(td.bags.size());
  for (std::size_t i = 0; i < td.bags.size(); ++i)
    bags[i].nodes = std::set<NodeId>(td.bags[i].begin(), td.bags[i].end());

  int root = -1;
  for (std::size_t i = 0; i < bags.size(); ++i)
    if (bags[i].nodes.count(root_node)) {
      root = static_cast<int>(i);
      break;
    }
  if (root == -1)
    throw Error(ErrorKind::precondition,
                "no bag contains required root node " + root_node);

  // Orient the tree away from the root.
  std::vector<std::vector<int>> nbr(bags.size());
  for (const auto& [a, b] : td.tree_edges) {
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  {
    std::vector<char> seen(bags.size(), 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : nbr[x])
        if (!seen[y]) {
          seen[y] = 1;
          bags[y].parent = x;
          stack.push_back(y);
        }
    }
  }

  // Splice bags that introduce nothing over their parent.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < bags.size(); ++v) {
      if (!bags[v].alive || bags[v].parent == -1) continue;
      const auto& p = bags[bags[v].parent];
      if (std::includes(p.nodes.begin(), p.nodes.end(), bags[v].nodes.begin(),
                        bags[v].nodes.end())) {
        for (std::size_t w = 0; w < bags.size(); ++w)
          if (bags[w].alive && bags[w].parent == static_cast<int>(v))
            bags[w].parent = bags[v].parent;
        bags[v].alive = false;
        changed = true;
      }
    }
  }

  // Split bags that introduce several vertices into prefix chains.
  std::size_t original = bags.size();
  for (std::size_t v = 0; v < original; ++v) {
    if (!bags[v].alive || bags[v].parent == -1) continue;
    const auto& pnodes = bags[bags[v].parent].nodes;
    std::vector<NodeId> fresh;
    std::set<NodeId> shared;
    for (const NodeId& x : bags[v].nodes) {
      if (pnodes.count(x))
        shared.insert(x);
      else
        fresh.push_back(x);
    }
    if (fresh.size() <= 1) continue;
    int above = bags[v].parent;
    std::set<NodeId> acc = shared;
    for (std::size_t i = 0; i + 1 < fresh.size(); ++i) {
      acc.insert(fresh[i]);
      B link;
      link.nodes = acc;
      link.parent = above;
      bags.push_back(link);
      above = static_cast<int>(bags.size()) - 1;
    }
    bags[v].parent = above;  // the original bag introduces only the last vertex
  }

  RootedDecomposition out;
  std::vector<int> remap(bags.size(), -1);
  for (std::size_t v = 0; v < bags.size(); ++v) {
    if (!bags[v].alive) continue;
    remap[v] = static_cast<int>(out.bags.size());
    out.bags.emplace_back(bags[v].nodes.begin(), bags[v].nodes.end());
    out.parent.push_back(-2);  // fill below
  }
  for (std::size_t v = 0; v < bags.size(); ++v) {
    if (!bags[v].alive) continue;
    out.parent[remap[v]] = bags[v].parent == -1 ? -1 : remap[bags[v].parent];
  }
  out.root = remap[root];
  return out;
}

inline TreeDecomposition to_tree_decomposition(const RootedDecomposition& rd) {
  TreeDecomposition td;
  td.bags = rd.bags;
  for (std::size_t i = 0; i < rd.parent.size(); ++i) {
    td.width = std::max(td.width, static_cast<int>(rd.bags[i].size()) - 1);
    if (rd.parent[i] >= 0)
      td.tree_edges.emplace_back(static_cast<int>(i), rd.parent[i]);
  }
  return td;
}

}  // namespace ncminor
