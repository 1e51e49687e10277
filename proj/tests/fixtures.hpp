#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "ncminor/flow.hpp"
#include "ncminor/graph.hpp"

namespace fixtures {

using namespace ncminor;

// The classic rate-2 example: two receivers behind a shared bottleneck.
inline Network butterfly() {
  return make_network(
      {"s", "a", "b", "c", "d", "t1", "t2"}, "s", {"t1", "t2"},
      {{"s", "a"},
       {"s", "b"},
       {"a", "c"},
       {"b", "c"},
       {"a", "t1"},
       {"b", "t2"},
       {"c", "d"},
       {"d", "t1"},
       {"d", "t2"}});
}

// Two disjoint two-hop paths into one receiver.
inline Network diamond() {
  return make_network({"s", "a", "b", "t"}, "s", {"t"},
                      {{"s", "a"}, {"s", "b"}, {"a", "t"}, {"b", "t"}});
}

inline Network parallel_links(int count) {
  std::vector<Link> links(count, Link{"s", "t"});
  return make_network({"s", "t"}, "s", {"t"}, std::move(links));
}

inline SimpleGraph cycle_graph(int n) {
  std::vector<NodeId> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("c" + std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(nodes[i], nodes[(i + 1) % n]);
  return make_graph(std::move(nodes), std::move(edges));
}

inline SimpleGraph path_graph(int n) {
  std::vector<NodeId> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("p" + std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(nodes[i], nodes[i + 1]);
  return make_graph(std::move(nodes), std::move(edges));
}

inline SimpleGraph petersen() {
  std::vector<NodeId> nodes;
  for (int i = 0; i < 10; ++i) nodes.push_back("p" + std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(nodes[i], nodes[(i + 1) % 5]);          // outer cycle
    edges.emplace_back(nodes[i], nodes[i + 5]);                // spokes
    edges.emplace_back(nodes[i + 5], nodes[(i + 2) % 5 + 5]);  // inner star
  }
  return make_graph(std::move(nodes), std::move(edges));
}

inline SimpleGraph grotzsch() {
  // Mycielski construction over C5.
  std::vector<NodeId> nodes{"z"};
  for (int i = 0; i < 5; ++i) nodes.push_back("u" + std::to_string(i));
  for (int i = 0; i < 5; ++i) nodes.push_back("w" + std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < 5; ++i) {
    NodeId ui = "u" + std::to_string(i);
    NodeId un = "u" + std::to_string((i + 1) % 5);
    NodeId wi = "w" + std::to_string(i);
    NodeId wn = "w" + std::to_string((i + 1) % 5);
    edges.emplace_back(ui, un);
    edges.emplace_back(wi, un);
    edges.emplace_back(ui, wn);
    edges.emplace_back(wi, "z");
  }
  return make_graph(std::move(nodes), std::move(edges));
}

inline SimpleGraph grid_graph(int rows, int cols) {
  auto name = [](int i, int j) {
    return "g" + std::to_string(i) + "_" + std::to_string(j);
  };
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      nodes.push_back(name(i, j));
      if (j + 1 < cols) edges.emplace_back(name(i, j), name(i, j + 1));
      if (i + 1 < rows) edges.emplace_back(name(i, j), name(i + 1, j));
    }
  return make_graph(std::move(nodes), std::move(edges));
}

inline SimpleGraph complement(const SimpleGraph& g) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    for (std::size_t j = i + 1; j < g.nodes().size(); ++j)
      if (!g.has_edge(g.nodes()[i], g.nodes()[j]))
        edges.emplace_back(g.nodes()[i], g.nodes()[j]);
  return make_graph(g.nodes(), std::move(edges));
}

// Random simple graph; used by property suites.
inline SimpleGraph random_graph(int n, int edge_percent, std::mt19937& rng) {
  std::vector<NodeId> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (static_cast<int>(rng() % 100) < edge_percent)
        edges.emplace_back(nodes[i], nodes[j]);
  return make_graph(std::move(nodes), std::move(edges));
}

// Random small multicast network over a random DAG; not minimal in general.
inline Network random_network(int n, std::mt19937& rng) {
  std::vector<NodeId> nodes{"s"};
  for (int i = 1; i < n; ++i) nodes.push_back("n" + std::to_string(i));
  std::vector<Link> links;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng() % 100 < 35) links.push_back({nodes[i], nodes[j]});
      if (rng() % 100 < 8) links.push_back({nodes[i], nodes[j]});  // parallel
    }
  std::vector<NodeId> receivers;
  for (int i = 1; i < n; ++i)
    if (rng() % 3 == 0) receivers.push_back(nodes[i]);
  if (receivers.empty()) receivers.push_back(nodes[n - 1]);
  return make_network(std::move(nodes), "s", std::move(receivers),
                      std::move(links));
}

// Brute-force oracles kept independent of the library's flow solver: they
// enumerate node subsets directly from the cut definition.
inline int oracle_rho(const Network& net, const std::set<NodeId>& u_set) {
  int entering = 0;
  for (const Link& l : net.links())
    entering += (!u_set.count(l.from) && u_set.count(l.to));
  return entering;
}

inline int oracle_min_cut(const Network& net, const NodeId& target) {
  std::vector<NodeId> free;
  for (const NodeId& v : net.nodes())
    if (v != net.source() && v != target) free.push_back(v);
  int best = std::numeric_limits<int>::max();
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    std::set<NodeId> u_set{target};
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask & (1u << i)) u_set.insert(free[i]);
    best = std::min(best, oracle_rho(net, u_set));
  }
  return best;
}

inline int oracle_eta(const Network& net, const NodeId& u, const NodeId& v) {
  std::vector<NodeId> free;
  for (const NodeId& w : net.nodes())
    if (w != net.source() && w != u && w != v) free.push_back(w);
  int best = std::numeric_limits<int>::max();
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    std::set<NodeId> u_set{u, v};
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask & (1u << i)) u_set.insert(free[i]);
    best = std::min(best, oracle_rho(net, u_set));
  }
  return best;
}

}  // namespace fixtures
