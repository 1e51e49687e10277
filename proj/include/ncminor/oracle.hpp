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

#include "ncminor/coding.hpp"
#include "ncminor/gf.hpp"
#include "ncminor/graph.hpp"
#include "ncminor/minor.hpp"
#include "ncminor/subtree.hpp"
#include "ncminor/treepack.hpp"

// Exponential-time reference implementations. They exist to validate the
// fast paths on small instances and stay deliberately simple; exceeding a
// size bound is a hard error, never a silent approximation.

namespace ncminor::oracle {

inline void check_bound(std::size_t size, std::size_t bound,
                        const std::string& what) {
  if (size > bound)
    throw Error(ErrorKind::bound, what + " above oracle bound of " +
                                      std::to_string(bound));
}

// Exact chromatic number by trying k = 1, 2, ... exhaustively.
inline int brute_chromatic(const SimpleGraph& g, int node_bound = 12) {
  check_bound(g.nodes().size(), node_bound, "graph size");
  std::size_t n = g.nodes().size();
  if (n == 0) return 0;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  {
    std::map<NodeId, int> index;
    for (std::size_t i = 0; i < n; ++i) index[g.nodes()[i]] = static_cast<int>(i);
    for (const auto& e : g.edges()) {
      int a = index.at(e.first), b = index.at(e.second);
      adj[a][b] = adj[b][a] = 1;
    }
  }
  std::vector<int> color(n, -1);
  std::function<bool(std::size_t, int)> fill = [&](std::size_t v, int k) {
    if (v == n) return true;
    // first occurrence of each color is forced to the lowest unused index
    int cap = 0;
    for (std::size_t i = 0; i < v; ++i) cap = std::max(cap, color[i] + 1);
    for (int c = 0; c < std::min(k, cap + 1); ++c) {
      bool clash = false;
      for (std::size_t u = 0; u < v && !clash; ++u)
        if (adj[v][u] && color[u] == c) clash = true;
      if (clash) continue;
      color[v] = c;
      if (fill(v + 1, k)) return true;
      color[v] = -1;
    }
    return false;
  };
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    std::fill(color.begin(), color.end(), -1);
    if (fill(0, k)) return k;
  }
  return static_cast<int>(n);
}

// Exhaustive search over assignments of the standard vectors to subtrees.
// Returns 1 (routing sentinel) when the two uncoded unit vectors already
// satisfy every receiver, else the smallest workable prime power.
inline int brute_min_field(const Network& net, int subtree_bound = 10) {
  SubtreeDecomposition dec = decompose(net);
  check_bound(dec.subtrees.size(), subtree_bound, "subtree count");
  std::size_t k = dec.subtrees.size();
  SimpleGraph h = subtree_graph(dec);

  std::vector<std::vector<char>> interferes(k, std::vector<char>(k, 0));
  for (const auto& e : h.edges()) {
    int a = std::stoi(e.first), b = std::stoi(e.second);
    interferes[a][b] = interferes[b][a] = 1;
  }

  auto try_field = [&](const Field& f, const std::vector<Vec2>& palette) {
    std::vector<int> pick(k, -1);
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
      if (i == k) {
        Code code;
        code.q = f.q();
        for (std::size_t s = 0; s < k; ++s)
          for (const LinkRef& r : dec.subtrees[s].links)
            code.vectors[r] = palette[pick[s]];
        return verify_code(net, code).ok;
      }
      for (std::size_t c = 0; c < palette.size(); ++c) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
          if (interferes[i][j] &&
              !linearly_independent(palette[c], palette[pick[j]], f))
            ok = false;
        if (!ok) continue;
        pick[i] = static_cast<int>(c);
        if (place(i + 1)) return true;
      }
      return false;
    };
    return place(0);
  };

  // routing sentinel: only the two unit vectors allowed
  {
    Field f2 = Field::make(2);
    std::vector<Vec2> units{{0, 1}, {1, 0}};
    if (try_field(f2, units)) return 1;
  }
  for (int q = 2;; ++q) {
    if (!is_prime_power(q)) continue;
    Field f = Field::make(q);
    if (try_field(f, standard_vectors(f))) return q;
  }
}

// Exhaustive branch-set enumeration; witness iff m is a minor of g.
inline std::optional<MinorWitness> brute_minor(const SimpleGraph& g,
                                               const SimpleGraph& m,
                                               int node_bound = 12) {
  check_bound(g.nodes().size(), node_bound, "graph size");
  return detail::brute_minor_search(g, m);
}

// Exhaustive search for h link-disjoint source-rooted out-trees that reach
// every receiver. Enumerates the valid tree masks once, then packs greedily
// over all mask tuples.
inline std::optional<TreePacking> brute_tree_packing(const Network& net,
                                                     int h,
                                                     int link_bound = 14) {
  check_bound(net.links().size(), link_bound, "link count");
  if (h < 0) throw Error(ErrorKind::precondition, "negative tree count");
  if (h == 0) return TreePacking{};

  const auto& links = net.links();
  int m = static_cast<int>(links.size());
  std::uint32_t full = (1u << m) - 1;

  auto valid_tree = [&](std::uint32_t mask) {
    if (!mask) return false;
    std::set<NodeId> heads;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        if (links[i].to == net.source()) return false;
        if (!heads.insert(links[i].to).second) return false;
      }
    std::set<NodeId> reached{net.source()};
    bool grown = true;
    while (grown) {
      grown = false;
      for (int i = 0; i < m; ++i)
        if ((mask & (1u << i)) && reached.count(links[i].from) &&
            !reached.count(links[i].to)) {
          reached.insert(links[i].to);
          grown = true;
        }
    }
    if (heads.size() + 1 != reached.size()) return false;  // detached piece
    for (const NodeId& t : net.receivers())
      if (!reached.count(t)) return false;
    return true;
  };

  std::vector<std::uint32_t> trees;
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    if (valid_tree(mask)) trees.push_back(mask);

  std::vector<std::uint32_t> chosen;
  std::function<bool(std::size_t, std::uint32_t)> pick =
      [&](std::size_t from, std::uint32_t used) -> bool {
    if (static_cast<int>(chosen.size()) == h) return true;
    for (std::size_t i = from; i < trees.size(); ++i) {
      if (trees[i] & used) continue;
      chosen.push_back(trees[i]);
      if (pick(i + 1, used | trees[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!pick(0, 0)) return std::nullopt;

  TreePacking tp;
  for (std::uint32_t mask : chosen) {
    std::vector<Link> tree;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) tree.push_back(links[i]);
    tp.trees.push_back(std::move(tree));
  }
  return tp;
}

// No induced odd cycle of length >= 5 in g or its complement.
inline bool is_perfect_small(const SimpleGraph& g, int node_bound = 12) {
  check_bound(g.nodes().size(), node_bound, "graph size");
  int n = static_cast<int>(g.nodes().size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  {
    std::map<NodeId, int> index;
    for (int i = 0; i < n; ++i) index[g.nodes()[i]] = i;
    for (const auto& e : g.edges()) {
      int a = index.at(e.first), b = index.at(e.second);
      adj[a][b] = adj[b][a] = 1;
    }
  }

  auto induced_cycle = [&](std::uint32_t mask, bool complement) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) members.push_back(v);
    auto linked = [&](int a, int b) {
      return complement ? !adj[a][b] : static_cast<bool>(adj[a][b]);
    };
    for (int v : members) {
      int deg = 0;
      for (int u : members)
        if (u != v && linked(v, u)) ++deg;
      if (deg != 2) return false;
    }
    // connected 2-regular induced subgraph = single cycle
    std::set<int> seen{members[0]};
    std::vector<int> stack{members[0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : members)
        if (u != v && linked(v, u) && seen.insert(u).second) stack.push_back(u);
    }
    return seen.size() == members.size();
  };

  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = std::popcount(mask);
    if (size < 5 || size % 2 == 0) continue;
    if (induced_cycle(mask, false) || induced_cycle(mask, true)) return false;
  }
  return true;
}

}  // namespace ncminor::oracle
