#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ncminor/construct.hpp"
#include "ncminor/flow.hpp"
#include "ncminor/graph.hpp"

// Seeded instance generators. They live with the CLI so the library core
// stays free of random number handling; outputs are pure functions of
// (kind, size, seed). mt19937 output is pinned by the standard, so the
// emitted bytes are reproducible.

namespace ncminor::gen {

inline std::uint32_t pick(std::mt19937& rng, std::uint32_t n) {
  return rng() % n;  // tiny bias is irrelevant here, determinism is not
}

// Two-terminal series-parallel construction: start from one s->t link, then
// subdivide or duplicate random links. The underlying topology stays
// K4-minor-free and the orientation acyclic.
inline Network gen_series_parallel(int node_target, int link_target,
                                   std::uint64_t seed) {
  if (node_target < 2 || link_target < 1)
    throw Error(ErrorKind::precondition, "series-parallel size too small");
  std::mt19937 rng(static_cast<std::uint32_t>(seed));

  std::vector<NodeId> nodes{"s", "t"};
  std::vector<Link> links{{"s", "t"}};
  int next_id = 0;

  while (static_cast<int>(nodes.size()) < node_target &&
         static_cast<int>(links.size()) < link_target) {
    std::uint32_t at = pick(rng, static_cast<std::uint32_t>(links.size()));
    // never spend the link budget below what the missing nodes require
    bool must_series = link_target - static_cast<int>(links.size()) <=
                       node_target - static_cast<int>(nodes.size());
    bool series = must_series || pick(rng, 2) == 0;
    if (series && static_cast<int>(nodes.size()) < node_target) {
      NodeId mid = "v" + std::to_string(next_id++);
      Link old = links[at];
      links[at] = {old.from, mid};
      links.push_back({mid, old.to});
      nodes.push_back(mid);
    } else {
      // cap parallel multiplicity at 3 to keep instances varied
      int copies = 0;
      for (const Link& l : links) copies += (l == links[at]);
      if (copies < 3) links.push_back(links[at]);
    }
  }
  while (static_cast<int>(links.size()) < link_target) {
    std::uint32_t at = pick(rng, static_cast<std::uint32_t>(links.size()));
    links.push_back(links[at]);
  }

  std::vector<NodeId> receivers{"t"};
  for (const NodeId& v : nodes) {
    if (v == "s" || v == "t") continue;
    if (pick(rng, 4) == 0) receivers.push_back(v);
  }
  return make_network(std::move(nodes), "s", std::move(receivers),
                      std::move(links));
}

inline Network gen_series_parallel(int size, std::uint64_t seed) {
  return gen_series_parallel(size, 2 * size, seed);
}

// Random subgraph of an n-by-n grid oriented right/down with the top-left
// corner as source; planar by construction. Receivers are sampled among
// nodes that still admit two disjoint paths.
inline Network gen_grid_planar(int n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::precondition, "grid size below 2");
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed + (attempt << 20)));
    auto name = [](int i, int j) {
      return "g" + std::to_string(i) + "_" + std::to_string(j);
    };
    std::vector<NodeId> nodes;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) nodes.push_back(name(i, j));
    std::vector<Link> links;
    bool full = attempt == 63;  // last attempt falls back to the whole grid
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (j + 1 < n && (full || pick(rng, 100) < 85))
          links.push_back({name(i, j), name(i, j + 1)});
        if (i + 1 < n && (full || pick(rng, 100) < 85))
          links.push_back({name(i, j), name(i + 1, j)});
      }

    Network net = make_network(nodes, name(0, 0), {name(n - 1, n - 1)},
                               std::move(links));
    detail::IndexedNet view(net);
    std::vector<NodeId> rich;
    for (const NodeId& v : net.nodes()) {
      if (v == net.source()) continue;
      if (detail::max_flow_indexed(view, view.source, view.at(v)) >= 2)
        rich.push_back(v);
    }
    if (rich.empty()) continue;
    std::vector<NodeId> receivers;
    for (const NodeId& v : rich)
      if (pick(rng, 3) == 0) receivers.push_back(v);
    if (receivers.empty()) receivers.push_back(rich.back());
    return make_network(net.nodes(), net.source(), std::move(receivers),
                        net.links());
  }
  throw Error(ErrorKind::precondition, "grid generation failed");
}

// Random simple graph pushed through the relay/receiver construction, then
// optionally perturbed with extra links and re-minimalized.
inline Network gen_two_minimal_random(int size, std::uint64_t seed) {
  if (size < 2) throw Error(ErrorKind::precondition, "size below 2");
  std::mt19937 rng(static_cast<std::uint32_t>(seed));

  int n = size;
  std::vector<NodeId> hnodes;
  for (int i = 0; i < n; ++i) hnodes.push_back("h" + std::to_string(i));
  std::vector<std::pair<NodeId, NodeId>> hedges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pick(rng, 100) < 45) hedges.emplace_back(hnodes[i], hnodes[j]);
  // no isolated nodes: wire each one to its successor
  std::set<NodeId> touched;
  for (const auto& e : hedges) {
    touched.insert(e.first);
    touched.insert(e.second);
  }
  for (int i = 0; i < n; ++i)
    if (!touched.count(hnodes[i]))
      hedges.emplace_back(hnodes[i], hnodes[(i + 1) % n]);

  Network net = network_from_graph(make_graph(hnodes, hedges));
  if (pick(rng, 2) == 0) {
    // perturb: duplicate a couple of random links, then reduce again
    std::vector<Link> links = net.links();
    int extras = 1 + static_cast<int>(pick(rng, 2));
    for (int e = 0; e < extras; ++e)
      links.push_back(links[pick(rng, static_cast<std::uint32_t>(links.size()))]);
    Network fat = make_network(net.nodes(), net.source(), net.receivers(),
                               std::move(links));
    return make_two_minimal(fat);
  }
  return net;
}

}  // namespace ncminor::gen
