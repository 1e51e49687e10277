#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ncminor/graph.hpp"

namespace ncminor {

// Builds the canonical 2-minimal network whose subtree graph is h: one relay
// per h-node fed by the source, one receiver per h-edge fed by both endpoint
// relays. Isolated h-nodes are rejected (their relay link would be redundant).
inline Network network_from_graph(const SimpleGraph& h) {
  if (h.edges().empty())
    throw Error(ErrorKind::precondition, "graph has no edges");
  for (const NodeId& v : h.nodes())
    if (h.degree(v) == 0)
      throw Error(ErrorKind::precondition, "graph has isolated node " + v);

  const NodeId source = "s";
  auto relay = [](const NodeId& v) { return "r_" + v; };

  std::vector<NodeId> nodes{source};
  std::vector<NodeId> receivers;
  std::vector<Link> links;
  for (const NodeId& v : h.nodes()) {
    nodes.push_back(relay(v));
    links.push_back({source, relay(v)});
  }
  for (const auto& [u, v] : h.edges()) {
    NodeId rx = "t_" + u + "_" + v;  // edge endpoints come pre-sorted
    nodes.push_back(rx);
    receivers.push_back(rx);
    links.push_back({relay(u), rx});
    links.push_back({relay(v), rx});
  }
  return make_network(std::move(nodes), source, std::move(receivers),
                      std::move(links));
}

namespace detail {

inline bool iso_backtrack(const std::vector<std::vector<char>>& a,
                          const std::vector<std::vector<char>>& b,
                          const std::vector<int>& deg_a,
                          const std::vector<int>& deg_b,
                          std::vector<int>& map_ab, std::vector<char>& used,
                          std::size_t pos) {
  std::size_t n = a.size();
  if (pos == n) return true;
  for (std::size_t cand = 0; cand < n; ++cand) {
    if (used[cand] || deg_a[pos] != deg_b[cand]) continue;
    bool fits = true;
    for (std::size_t prev = 0; prev < pos && fits; ++prev)
      if (a[pos][prev] != b[cand][map_ab[prev]]) fits = false;
    if (!fits) continue;
    map_ab[pos] = static_cast<int>(cand);
    used[cand] = 1;
    if (iso_backtrack(a, b, deg_a, deg_b, map_ab, used, pos + 1)) return true;
    used[cand] = 0;
  }
  return false;
}

}  // namespace detail

// Exhaustive isomorphism test with degree pruning, desk scale only.
inline bool graph_isomorphic(const SimpleGraph& g1, const SimpleGraph& g2,
                             int node_bound = 12) {
  if (static_cast<int>(g1.nodes().size()) > node_bound ||
      static_cast<int>(g2.nodes().size()) > node_bound)
    throw Error(ErrorKind::bound, "graph above isomorphism bound of " +
                                      std::to_string(node_bound) + " nodes");
  std::size_t n = g1.nodes().size();
  if (n != g2.nodes().size() || g1.edges().size() != g2.edges().size())
    return false;

  auto build = [](const SimpleGraph& g) {
    std::size_t n = g.nodes().size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::map<NodeId, int> index;
    for (std::size_t i = 0; i < n; ++i) index[g.nodes()[i]] = static_cast<int>(i);
    for (const auto& e : g.edges()) {
      int a = index.at(e.first), b = index.at(e.second);
      adj[a][b] = adj[b][a] = 1;
    }
    return adj;
  };
  auto degrees = [](const std::vector<std::vector<char>>& adj) {
    std::vector<int> deg(adj.size(), 0);
    for (std::size_t i = 0; i < adj.size(); ++i)
      for (std::size_t j = 0; j < adj.size(); ++j) deg[i] += adj[i][j];
    return deg;
  };

  auto a = build(g1);
  auto b = build(g2);
  auto deg_a = degrees(a);
  auto deg_b = degrees(b);
  {
    auto sa = deg_a, sb = deg_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> map_ab(n, -1);
  std::vector<char> used(n, 0);
  return detail::iso_backtrack(a, b, deg_a, deg_b, map_ab, used, 0);
}

}  // namespace ncminor
