#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ncminor/flow.hpp"
#include "ncminor/graph.hpp"

namespace ncminor {

// One flow-carrying out-tree of the decomposition. The root link leaves
// either the source or an in-degree-2 node; every internal node has network
// in-degree 1; leaves are the in-degree-2 heads reached by the tree's links.
struct Subtree {
  LinkRef root_link;
  NodeId root;
  std::vector<LinkRef> links;   // sorted
  std::vector<NodeId> leaves;   // sorted
};

struct SubtreeDecomposition {
  std::vector<Subtree> subtrees;          // ordered by root link
  std::map<LinkRef, int> link_owner;      // link -> subtree index
};

// Partitions the links of a 2-minimal acyclic network into subtrees:
// seed one subtree per link leaving the source or an in-degree-2 node,
// then absorb every link whose tail is an in-degree-1 node already reached.
inline SubtreeDecomposition decompose(const Network& net) {
  if (!is_acyclic(net).acyclic)
    throw Error(ErrorKind::precondition, "cyclic network unsupported");
  TwoMinimalReport two = verify_two_minimal(net);
  if (!two.ok)
    throw Error(ErrorKind::precondition, "network not 2-minimal: " + two.violation);

  std::map<NodeId, int> indeg;
  for (const NodeId& v : net.nodes()) indeg[v] = net.in_degree(v);

  std::map<NodeId, std::vector<LinkRef>> out_links;
  for (const LinkRef& r : net.link_refs()) out_links[r.from].push_back(r);

  SubtreeDecomposition dec;
  for (const LinkRef& seed : net.link_refs()) {
    if (!(seed.from == net.source() || indeg[seed.from] == 2)) continue;
    Subtree st;
    st.root_link = seed;
    st.root = seed.from;
    std::vector<LinkRef> frontier{seed};
    std::set<NodeId> reached;  // non-root nodes of this subtree
    while (!frontier.empty()) {
      LinkRef cur = frontier.back();
      frontier.pop_back();
      st.links.push_back(cur);
      const NodeId& head = cur.to;
      if (indeg[head] == 2) {
        st.leaves.push_back(head);
        continue;
      }
      if (!reached.insert(head).second)
        throw Error(ErrorKind::precondition,
                    "subtree re-enters node " + head + "; input not link-minimal");
      for (const LinkRef& next : out_links[head]) frontier.push_back(next);
    }
    std::sort(st.links.begin(), st.links.end());
    std::sort(st.leaves.begin(), st.leaves.end());
    st.leaves.erase(std::unique(st.leaves.begin(), st.leaves.end()),
                    st.leaves.end());
    dec.subtrees.push_back(std::move(st));
  }

  std::sort(dec.subtrees.begin(), dec.subtrees.end(),
            [](const Subtree& a, const Subtree& b) {
              return a.root_link < b.root_link;
            });
  for (int i = 0; i < static_cast<int>(dec.subtrees.size()); ++i)
    for (const LinkRef& r : dec.subtrees[i].links) {
      if (dec.link_owner.count(r))
        throw Error(ErrorKind::precondition,
                    "link absorbed twice; input not 2-minimal");
      dec.link_owner[r] = i;
    }
  if (dec.link_owner.size() != net.links().size())
    throw Error(ErrorKind::precondition,
                "links left out of every subtree; input not 2-minimal");
  return dec;
}

// Interference graph: one node per subtree (named by its index), an edge
// whenever two subtrees share a leaf.
inline SimpleGraph subtree_graph(const SubtreeDecomposition& dec) {
  int n = static_cast<int>(dec.subtrees.size());
  std::vector<NodeId> nodes;
  nodes.reserve(n);
  for (int i = 0; i < n; ++i) nodes.push_back(std::to_string(i));

  std::map<NodeId, std::vector<int>> by_leaf;
  for (int i = 0; i < n; ++i)
    for (const NodeId& leaf : dec.subtrees[i].leaves) by_leaf[leaf].push_back(i);

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& [leaf, owners] : by_leaf)
    for (std::size_t a = 0; a < owners.size(); ++a)
      for (std::size_t b = a + 1; b < owners.size(); ++b)
        if (owners[a] != owners[b])
          edges.emplace_back(std::to_string(owners[a]),
                             std::to_string(owners[b]));
  return make_graph(std::move(nodes), std::move(edges));
}

struct DecompositionReport {
  bool ok = false;
  std::string violation;
};

// Structural audit of a claimed decomposition against the network:
// partition, out-tree shape, root rule, closure maximality, leaf rule, and
// the two incoming links of each in-degree-2 node landing in two subtrees.
inline DecompositionReport verify_decomposition(const Network& net,
                                                const SubtreeDecomposition& dec) {
  DecompositionReport rep;
  std::map<NodeId, int> indeg;
  for (const NodeId& v : net.nodes()) indeg[v] = net.in_degree(v);

  // Partition of the link multiset.
  std::set<LinkRef> seen;
  std::size_t total = 0;
  for (const Subtree& st : dec.subtrees) {
    for (const LinkRef& r : st.links) {
      if (!seen.insert(r).second) {
        rep.violation = "link in two subtrees";
        return rep;
      }
      ++total;
    }
  }
  std::vector<LinkRef> all = net.link_refs();
  if (total != all.size() ||
      !std::all_of(all.begin(), all.end(),
                   [&](const LinkRef& r) { return seen.count(r); })) {
    rep.violation = "subtrees do not partition the links";
    return rep;
  }

  for (const Subtree& st : dec.subtrees) {
    if (st.root != st.root_link.from) {
      rep.violation = "root does not match root link tail";
      return rep;
    }
    if (!(st.root == net.source() || indeg[st.root] == 2)) {
      rep.violation = "subtree rooted at " + st.root +
                      " which is neither source nor in-degree-2";
      return rep;
    }
    // Out-tree shape: heads distinct, every tail reachable from the root.
    std::set<NodeId> heads;
    for (const LinkRef& r : st.links) {
      if (!heads.insert(r.to).second) {
        rep.violation = "subtree enters node " + r.to + " twice";
        return rep;
      }
    }
    for (const LinkRef& r : st.links) {
      if (r.from != st.root && !heads.count(r.from)) {
        rep.violation = "subtree link from unreached node " + r.from;
        return rep;
      }
    }
    // Internal (non-leaf) heads must be in-degree-1 Steiner nodes, and their
    // outgoing links must all be absorbed (closure maximality).
    std::set<LinkRef> own(st.links.begin(), st.links.end());
    for (const LinkRef& r : st.links) {
      if (indeg[r.to] == 1) {
        for (const LinkRef& next : net.link_refs())
          if (next.from == r.to && !own.count(next)) {
            rep.violation = "closure not maximal at node " + r.to;
            return rep;
          }
      }
    }
    // Leaf rule: leaves are exactly the in-degree-2 heads.
    std::vector<NodeId> expect;
    for (const LinkRef& r : st.links)
      if (indeg[r.to] == 2) expect.push_back(r.to);
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    if (expect != st.leaves) {
      rep.violation = "leaf set mismatch";
      return rep;
    }
  }

  // Each in-degree-2 node's incoming links lie in two distinct subtrees.
  for (const NodeId& v : net.nodes()) {
    if (indeg[v] != 2) continue;
    std::set<int> owners;
    for (const LinkRef& r : net.link_refs())
      if (r.to == v) {
        auto it = dec.link_owner.find(r);
        if (it == dec.link_owner.end()) {
          rep.violation = "link_owner missing entry";
          return rep;
        }
        owners.insert(it->second);
      }
    if (owners.size() != 2) {
      rep.violation = "both links into " + v + " in one subtree";
      return rep;
    }
  }

  rep.ok = true;
  return rep;
}

}  // namespace ncminor
