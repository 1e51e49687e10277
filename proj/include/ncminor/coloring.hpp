#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ncminor/graph.hpp"

namespace ncminor {

struct Coloring {
  std::map<NodeId, int> colors;  // node -> color index 0..num_colors-1
  int num_colors = 0;
};

inline bool is_proper_coloring(const SimpleGraph& g, const Coloring& col) {
  for (const NodeId& v : g.nodes())
    if (!col.colors.count(v)) return false;
  for (const auto& [u, v] : g.edges())
    if (col.colors.at(u) == col.colors.at(v)) return false;
  return true;
}

struct ChromaticResult {
  int chi = 0;        // exact chi, or an upper bound when !exact
  Coloring coloring;
  bool exact = true;
};

namespace detail {

struct AdjBits {
  int n = 0;
  std::vector<std::vector<char>> adj;
  std::vector<int> degree;

  explicit AdjBits(const SimpleGraph& g) {
    n = static_cast<int>(g.nodes().size());
    adj.assign(n, std::vector<char>(n, 0));
    degree.assign(n, 0);
    std::map<NodeId, int> index;
    for (int i = 0; i < n; ++i) index[g.nodes()[i]] = i;
    for (const auto& [u, v] : g.edges()) {
      int a = index.at(u), b = index.at(v);
      adj[a][b] = adj[b][a] = 1;
      ++degree[a];
      ++degree[b];
    }
  }
};

// Descending-degree greedy; gives the branch-and-bound upper bound and the
// heuristic answer above the exact-size limit.
inline std::vector<int> greedy_coloring(const AdjBits& g) {
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree[a] > g.degree[b]; });
  std::vector<int> color(g.n, -1);
  for (int v : order) {
    std::vector<char> used(g.n + 1, 0);
    for (int u = 0; u < g.n; ++u)
      if (g.adj[v][u] && color[u] >= 0) used[color[u]] = 1;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

// Greedy clique on descending degree; a lower bound for chi.
inline std::vector<int> greedy_clique(const AdjBits& g) {
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree[a] > g.degree[b]; });
  std::vector<int> clique;
  for (int v : order) {
    bool fits = std::all_of(clique.begin(), clique.end(),
                            [&](int u) { return g.adj[v][u]; });
    if (fits) clique.push_back(v);
  }
  return clique;
}

// Backtracking k-colorability. Clique vertices are pre-colored; each new
// vertex may use at most one color beyond those already in play.
inline bool k_colorable(const AdjBits& g, int k, const std::vector<int>& clique,
                        std::vector<int>& color) {
  if (static_cast<int>(clique.size()) > k) return false;
  color.assign(g.n, -1);
  std::vector<int> order;
  for (std::size_t i = 0; i < clique.size(); ++i) {
    color[clique[i]] = static_cast<int>(i);
    order.push_back(clique[i]);
  }
  std::vector<int> rest;
  for (int v = 0; v < g.n; ++v)
    if (color[v] < 0) rest.push_back(v);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](int a, int b) { return g.degree[a] > g.degree[b]; });
  order.insert(order.end(), rest.begin(), rest.end());

  int fixed = static_cast<int>(clique.size());
  std::vector<int> max_used(order.size() + 1, 0);
  max_used[fixed] = std::max(fixed - 1, -1) + 1;

  std::function<bool(int)> place = [&](int pos) -> bool {
    if (pos == static_cast<int>(order.size())) return true;
    int v = order[pos];
    int limit = std::min(k - 1, max_used[pos]);
    for (int c = 0; c <= limit; ++c) {
      bool clash = false;
      for (int u = 0; u < g.n; ++u)
        if (g.adj[v][u] && color[u] == c) {
          clash = true;
          break;
        }
      if (clash) continue;
      color[v] = c;
      max_used[pos + 1] = std::max(max_used[pos], c + 1);
      if (place(pos + 1)) return true;
      color[v] = -1;
    }
    return false;
  };
  return place(fixed);
}

}  // namespace detail

struct ChromaticOptions {
  int exact_bound = 20;  // graphs above this size get a greedy upper bound
};

// Exact chromatic number with a witness coloring: branch and bound between
// a greedy clique lower bound and a greedy coloring upper bound.
inline ChromaticResult chromatic_number(const SimpleGraph& g,
                                        const ChromaticOptions& opts = {}) {
  ChromaticResult res;
  if (g.nodes().empty()) {
    res.chi = 0;
    return res;
  }
  detail::AdjBits bits(g);

  auto pack = [&](const std::vector<int>& color) {
    // Remap color ids by first appearance for a stable witness.
    std::map<int, int> remap;
    Coloring col;
    for (int v = 0; v < bits.n; ++v) {
      auto it = remap.emplace(color[v], static_cast<int>(remap.size())).first;
      col.colors[g.nodes()[v]] = it->second;
    }
    col.num_colors = static_cast<int>(remap.size());
    return col;
  };

  std::vector<int> greedy = detail::greedy_coloring(bits);
  int ub = *std::max_element(greedy.begin(), greedy.end()) + 1;

  if (bits.n > opts.exact_bound) {
    res.chi = ub;
    res.coloring = pack(greedy);
    res.exact = false;
    return res;
  }

  std::vector<int> clique = detail::greedy_clique(bits);
  int lb = std::max<int>(1, static_cast<int>(clique.size()));
  std::vector<int> color;
  for (int k = lb; k <= ub; ++k) {
    if (k == ub) {
      res.chi = ub;
      res.coloring = pack(greedy);
      return res;
    }
    if (detail::k_colorable(bits, k, clique, color)) {
      res.chi = k;
      res.coloring = pack(color);
      return res;
    }
  }
  res.chi = ub;
  res.coloring = pack(greedy);
  return res;
}

inline ChromaticResult chromatic_number_exact(const SimpleGraph& g,
                                              int exact_bound = 20) {
  if (static_cast<int>(g.nodes().size()) > exact_bound)
    throw Error(ErrorKind::bound,
                "graph above exact coloring bound of " +
                    std::to_string(exact_bound) + " nodes");
  return chromatic_number(g, ChromaticOptions{exact_bound});
}

}  // namespace ncminor
