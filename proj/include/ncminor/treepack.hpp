#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncminor/flow.hpp"
#include "ncminor/graph.hpp"
#include "ncminor/minor.hpp"

namespace ncminor {

// Link-disjoint out-trees rooted at the network source.
struct TreePacking {
  std::vector<std::vector<Link>> trees;  // each tree's links, sorted

  std::map<NodeId, int> membership_counts(const NodeId& source) const {
    std::map<NodeId, int> counts;
    for (const auto& tree : trees) {
      std::set<NodeId> touched;
      for (const Link& l : tree) {
        touched.insert(l.from);
        touched.insert(l.to);
      }
      touched.erase(source);
      for (const NodeId& v : touched) ++counts[v];
    }
    return counts;
  }
};

// Bookkeeping of one link-splitting step at a freshly introduced bag node t
// with bag partners u and v.
struct SplitRecord {
  NodeId t, u, v;
  int c_ut = 0, c_tu = 0, c_vt = 0, c_tv = 0;
  int delta_ut = 0;  // c(u,t) - c(t,v), residual u->t links
  int delta_vt = 0;  // c(v,t) - c(t,u), residual v->t links
  int replaced_uv = 0;  // pairs u->t,t->v replaced by u->v
  int replaced_vu = 0;  // pairs v->t,t->u replaced by v->u
};

struct PackingReport {
  bool ok = false;
  std::string violation;
};

// Checks link-disjointness, out-tree shape, the per-node membership counts
// (each non-source v in exactly lambda(v) trees) and the pairwise coverage
// (at least eta(u,v) trees touch u or v for each supplied pair).
inline PackingReport verify_packing(
    const Network& net, const TreePacking& tp, const FlowProfile& profile,
    const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  PackingReport rep;

  std::map<std::pair<NodeId, NodeId>, int> used;
  for (const auto& tree : tp.trees)
    for (const Link& l : tree) ++used[{l.from, l.to}];
  for (const auto& [arc, cnt] : used)
    if (cnt > net.count(arc.first, arc.second)) {
      rep.violation = "disjointness: " + arc.first + "->" + arc.second +
                      " used beyond its multiplicity";
      return rep;
    }

  for (std::size_t i = 0; i < tp.trees.size(); ++i) {
    const auto& tree = tp.trees[i];
    if (tree.empty()) {
      rep.violation = "tree shape: empty tree";
      return rep;
    }
    std::set<NodeId> heads;
    for (const Link& l : tree) {
      if (l.to == net.source()) {
        rep.violation = "tree shape: link entering the source";
        return rep;
      }
      if (!heads.insert(l.to).second) {
        rep.violation = "tree shape: node " + l.to + " entered twice";
        return rep;
      }
    }
    std::set<NodeId> reached{net.source()};
    std::vector<Link> pending = tree;
    bool grown = true;
    while (grown && !pending.empty()) {
      grown = false;
      for (auto it = pending.begin(); it != pending.end();) {
        if (reached.count(it->from)) {
          reached.insert(it->to);
          it = pending.erase(it);
          grown = true;
        } else {
          ++it;
        }
      }
    }
    if (!pending.empty()) {
      rep.violation = "tree shape: tree " + std::to_string(i) +
                      " not rooted at the source";
      return rep;
    }
  }

  std::map<NodeId, int> counts = tp.membership_counts(net.source());
  for (const auto& [v, lam] : profile.lambda) {
    int got = counts.count(v) ? counts.at(v) : 0;
    if (got != lam) {
      rep.violation = "membership: node " + v + " in " + std::to_string(got) +
                      " trees, expected " + std::to_string(lam);
      return rep;
    }
  }

  for (const auto& [u, v] : pairs) {
    int touching = 0;
    for (const auto& tree : tp.trees) {
      bool hit = false;
      for (const Link& l : tree)
        if (l.from == u || l.to == u || l.from == v || l.to == v) {
          hit = true;
          break;
        }
      touching += hit;
    }
    int need = eta(net, u, v);
    if (touching < need) {
      rep.violation = "pair coverage: {" + u + "," + v + "} touched by " +
                      std::to_string(touching) + " trees, eta is " +
                      std::to_string(need);
      return rep;
    }
  }

  rep.ok = true;
  return rep;
}

// Distinct non-source pairs that share a bag.
inline std::vector<std::pair<NodeId, NodeId>> same_bag_pairs(
    const std::vector<std::vector<NodeId>>& bags, const NodeId& source) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& bag : bags)
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j) {
        if (bag[i] == source || bag[j] == source) continue;
        out.insert(std::minmax(bag[i], bag[j]));
      }
  return {out.begin(), out.end()};
}

namespace detail {

struct PackWork {
  std::vector<NodeId> ids;
  std::map<NodeId, int> index;
  struct L {
    int tail, head;
    bool alive;
  };
  std::vector<L> links;
  int source = -1;
  int original_links = 0;

  explicit PackWork(const Network& net) {
    ids = net.nodes();
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) index[ids[i]] = i;
    for (const Link& l : net.links())
      links.push_back({index.at(l.from), index.at(l.to), true});
    source = index.at(net.source());
    original_links = static_cast<int>(links.size());
  }

  int rho_of(int v) const {
    int d = 0;
    for (const L& l : links) d += (l.alive && l.head == v);
    return d;
  }

  std::vector<int> alive_ids(int tail, int head) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(links.size()); ++i)
      if (links[i].alive && links[i].tail == tail && links[i].head == head)
        out.push_back(i);
    return out;
  }

  // Max-flow over alive links; extra arcs of large capacity into a merged
  // sink implement the eta computation.
  int eta_alive(int u, int v) const {
    int sink = static_cast<int>(ids.size());
    int big = 2 * std::max<int>(1, static_cast<int>(links.size()));
    MaxFlowSolver solver(sink + 1);
    std::map<std::pair<int, int>, int> caps;
    for (const L& l : links)
      if (l.alive) ++caps[{l.tail, l.head}];
    for (const auto& [arc, cap] : caps) solver.add_arc(arc.first, arc.second, cap);
    if (u == v) {
      solver.add_arc(u, sink, big);
    } else {
      solver.add_arc(u, sink, big);
      solver.add_arc(v, sink, big);
    }
    return solver.max_flow(source, sink);
  }
};

// One peeled bag, replayed in reverse when the packed subnetwork grows back.
struct PeelStep {
  enum class Kind { cut, split } kind = Kind::cut;
  int t = -1, u = -1, v = -1;  // v is the cut node in the cut case
  // split: added link id -> the two consumed original ids (first, second)
  std::vector<std::array<int, 3>> added;  // {added_id, first_id, second_id}
  std::vector<int> residual_ut;           // u->t ids to reattach
  std::vector<int> residual_vt;           // v->t ids to reattach
  int lambda_u = -1, lambda_v = -1, lambda_t = -1;  // rho at peel time
  int eta_uv = -1;                                  // -1 when undefined
};

struct TreeState {
  std::vector<std::set<int>> link_ids;   // per tree
  std::vector<std::set<int>> node_ids;   // per tree, endpoints incl. source

  void add_link(std::size_t tree, const PackWork& w, int id) {
    link_ids[tree].insert(id);
    node_ids[tree].insert(w.links[id].tail);
    node_ids[tree].insert(w.links[id].head);
  }
  bool has_node(std::size_t tree, int v) const {
    return node_ids[tree].count(v) > 0;
  }
};

inline void pack_fail(const std::string& msg) {
  throw Error(ErrorKind::precondition, "tree packing failed: " + msg);
}

// Exhaustive base packing of the <=3-node root-bag network. Tree shapes over
// s,x,y are forced up to the number of trees carrying both s->x and s->y,
// which the pairwise coverage bound pins down; the small scan finds it.
inline TreeState pack_base(const PackWork& w, const std::vector<int>& bag_nodes) {
  for (const auto& l : w.links)
    if (l.alive && l.head == w.source) pack_fail("link entering the source");

  std::vector<int> others;
  for (int v : bag_nodes)
    if (v != w.source) others.push_back(v);
  std::sort(others.begin(), others.end());

  TreeState ts;
  if (others.empty()) return ts;

  if (others.size() == 1) {
    for (int id : w.alive_ids(w.source, others[0])) {
      ts.link_ids.emplace_back();
      ts.node_ids.emplace_back();
      ts.add_link(ts.link_ids.size() - 1, w, id);
    }
    if (w.rho_of(others[0]) != static_cast<int>(ts.link_ids.size()))
      pack_fail("base bag node with foreign incoming links");
    return ts;
  }

  int x = others[0], y = others[1];
  std::vector<int> sx = w.alive_ids(w.source, x);
  std::vector<int> sy = w.alive_ids(w.source, y);
  std::vector<int> xy = w.alive_ids(x, y);
  std::vector<int> yx = w.alive_ids(y, x);
  if (static_cast<int>(sx.size() + yx.size()) != w.rho_of(x) ||
      static_cast<int>(sy.size() + xy.size()) != w.rho_of(y))
    pack_fail("base bag nodes with foreign incoming links");

  int n_chain_xy = static_cast<int>(xy.size());
  int n_chain_yx = static_cast<int>(yx.size());
  int spare_x = static_cast<int>(sx.size()) - n_chain_xy;
  int spare_y = static_cast<int>(sy.size()) - n_chain_yx;
  if (spare_x < 0 || spare_y < 0)
    pack_fail("base network violates lambda = rho");

  int eta_xy = w.eta_alive(x, y);
  for (int both = 0; both <= std::min(spare_x, spare_y); ++both) {
    int total = static_cast<int>(sx.size() + sy.size()) - both;
    if (total < eta_xy) continue;

    TreeState cand;
    auto new_tree = [&]() {
      cand.link_ids.emplace_back();
      cand.node_ids.emplace_back();
      return cand.link_ids.size() - 1;
    };
    std::size_t ix = 0, iy = 0;
    for (int k = 0; k < n_chain_xy; ++k) {
      auto tr = new_tree();
      cand.add_link(tr, w, sx[ix++]);
      cand.add_link(tr, w, xy[k]);
    }
    for (int k = 0; k < n_chain_yx; ++k) {
      auto tr = new_tree();
      cand.add_link(tr, w, sy[iy++]);
      cand.add_link(tr, w, yx[k]);
    }
    for (int k = 0; k < both; ++k) {
      auto tr = new_tree();
      cand.add_link(tr, w, sx[ix++]);
      cand.add_link(tr, w, sy[iy++]);
    }
    while (ix < sx.size()) {
      auto tr = new_tree();
      cand.add_link(tr, w, sx[ix++]);
    }
    while (iy < sy.size()) {
      auto tr = new_tree();
      cand.add_link(tr, w, sy[iy++]);
    }

    // property 1 for x and y
    int in_x = 0, in_y = 0;
    for (std::size_t tr = 0; tr < cand.link_ids.size(); ++tr) {
      in_x += cand.has_node(tr, x);
      in_y += cand.has_node(tr, y);
    }
    if (in_x != w.rho_of(x) || in_y != w.rho_of(y)) continue;
    return cand;
  }
  pack_fail("no base packing satisfies the coverage bound");
  return ts;  // unreachable
}

}  // namespace detail

struct PackedNetwork {
  TreePacking packing;
  FlowProfile profile;                               // lambda used in checks
  std::vector<std::pair<NodeId, NodeId>> pairs;      // same-bag pairs
  std::vector<SplitRecord> splits;                   // one per split step
};

namespace detail {

// Core induction over the rooted width-2 decomposition. Peels leaf bags one
// at a time: the bag's fresh node t is spliced out of the network (splitting
// its through-pairs), the rest is packed, and t is reattached on the unwind.
inline PackedNetwork pack_rooted(const Network& net,
                                 const RootedDecomposition& rd) {
  PackWork w(net);
  int nbags = static_cast<int>(rd.bags.size());
  std::vector<char> bag_alive(nbags, 1);
  std::vector<int> child_count(nbags, 0);
  for (int b = 0; b < nbags; ++b)
    if (rd.parent[b] >= 0) ++child_count[rd.parent[b]];

  std::vector<std::set<int>> bag_nodes(nbags);
  for (int b = 0; b < nbags; ++b)
    for (const NodeId& v : rd.bags[b]) bag_nodes[b].insert(w.index.at(v));

  PackedNetwork out;
  std::vector<PeelStep> steps;

  int alive_bags = nbags;
  while (alive_bags > 1) {
    int leaf = -1;
    for (int b = 0; b < nbags; ++b)
      if (bag_alive[b] && b != rd.root && child_count[b] == 0) {
        leaf = b;
        break;
      }
    if (leaf == -1) pack_fail("decomposition is not a tree");
    int parent = rd.parent[leaf];

    std::vector<int> fresh, shared;
    for (int v : bag_nodes[leaf]) {
      if (bag_nodes[parent].count(v))
        shared.push_back(v);
      else
        fresh.push_back(v);
    }
    if (fresh.size() != 1)
      pack_fail("bag introduces " + std::to_string(fresh.size()) +
                " nodes; decomposition not normalized");
    if (shared.empty())
      pack_fail("node " + w.ids[fresh[0]] + " disconnected from the source");
    int t = fresh[0];

    // All alive links at t must stay inside the bag.
    for (const auto& l : w.links)
      if (l.alive && (l.tail == t || l.head == t)) {
        int other = l.tail == t ? l.head : l.tail;
        if (!bag_nodes[leaf].count(other))
          pack_fail("link leaves the bag of its fresh node");
      }

    PeelStep step;
    step.t = t;
    if (shared.size() == 1) {
      int v = shared[0];
      step.kind = PeelStep::Kind::cut;
      step.v = v;
      if (!w.alive_ids(t, v).empty())
        pack_fail("pendant node with a back link; lambda = rho violated");
      step.residual_vt = w.alive_ids(v, t);
      step.lambda_v = w.rho_of(v);
      step.lambda_t = w.rho_of(t);
      if (v != w.source && step.lambda_t > step.lambda_v)
        pack_fail("pendant node thicker than its cut node");
      for (int id : step.residual_vt) w.links[id].alive = false;
    } else {
      int u = shared[0], v = shared[1];
      step.kind = PeelStep::Kind::split;
      step.u = u;
      step.v = v;
      std::vector<int> ut = w.alive_ids(u, t), tu = w.alive_ids(t, u);
      std::vector<int> vt = w.alive_ids(v, t), tv = w.alive_ids(t, v);
      SplitRecord rec;
      rec.t = w.ids[t];
      rec.u = w.ids[u];
      rec.v = w.ids[v];
      rec.c_ut = static_cast<int>(ut.size());
      rec.c_tu = static_cast<int>(tu.size());
      rec.c_vt = static_cast<int>(vt.size());
      rec.c_tv = static_cast<int>(tv.size());
      if (rec.c_tu > rec.c_vt || rec.c_tv > rec.c_ut)
        pack_fail("through-traffic exceeds supply at " + rec.t +
                  "; lambda = rho violated");
      rec.delta_ut = rec.c_ut - rec.c_tv;
      rec.delta_vt = rec.c_vt - rec.c_tu;
      rec.replaced_vu = rec.c_tu;
      rec.replaced_uv = rec.c_tv;

      step.lambda_u = w.rho_of(u);
      step.lambda_v = w.rho_of(v);
      step.lambda_t = w.rho_of(t);
      if (u != w.source &&
          step.lambda_u < rec.delta_ut + rec.c_tv + rec.c_tu)
        pack_fail("split feasibility bound failed at " + rec.u);
      if (v != w.source &&
          step.lambda_v < rec.delta_vt + rec.c_tu + rec.c_tv)
        pack_fail("split feasibility bound failed at " + rec.v);
      if (u != w.source && v != w.source) {
        step.eta_uv = w.eta_alive(u, v);
        if (step.lambda_t > step.eta_uv)
          pack_fail("pendant pair bound failed at " + rec.t);
        int eta_ut = w.eta_alive(u, t);
        if (eta_ut > step.lambda_u + rec.delta_vt)
          pack_fail("cut bound eta(u,t) failed at " + rec.t);
      }

      // pair v->t with t->u as a fresh v->u link, and u->t with t->v as u->v
      for (int k = 0; k < rec.c_tu; ++k) {
        int a = vt[k], b = tu[k];
        w.links[a].alive = false;
        w.links[b].alive = false;
        w.links.push_back({v, u, true});
        step.added.push_back({static_cast<int>(w.links.size()) - 1, a, b});
      }
      for (int k = 0; k < rec.c_tv; ++k) {
        int a = ut[k], b = tv[k];
        w.links[a].alive = false;
        w.links[b].alive = false;
        w.links.push_back({u, v, true});
        step.added.push_back({static_cast<int>(w.links.size()) - 1, a, b});
      }
      step.residual_ut.assign(ut.begin() + rec.c_tv, ut.end());
      step.residual_vt.assign(vt.begin() + rec.c_tu, vt.end());
      for (int id : step.residual_ut) w.links[id].alive = false;
      for (int id : step.residual_vt) w.links[id].alive = false;
      out.splits.push_back(rec);
    }

    steps.push_back(std::move(step));
    bag_alive[leaf] = 0;
    --child_count[parent];
    --alive_bags;
  }

  TreeState ts = pack_base(
      w, std::vector<int>(bag_nodes[rd.root].begin(), bag_nodes[rd.root].end()));

  // Unwind: reattach each peeled node.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const PeelStep& step = *it;
    auto trees_with = [&](int node, int without, bool prefer_missing,
                          int missing_node) {
      // candidate trees containing `node`, not containing `without`;
      // trees missing `missing_node` first when asked, ascending index
      std::vector<std::size_t> first, second;
      for (std::size_t tr = 0; tr < ts.link_ids.size(); ++tr) {
        if (!ts.has_node(tr, node) || ts.has_node(tr, without)) continue;
        if (prefer_missing && ts.has_node(tr, missing_node))
          second.push_back(tr);
        else
          first.push_back(tr);
      }
      first.insert(first.end(), second.begin(), second.end());
      return first;
    };

    if (step.kind == PeelStep::Kind::cut) {
      auto cands = trees_with(step.v, step.t, false, -1);
      if (cands.size() < step.residual_vt.size())
        pack_fail("not enough trees through the cut node " + w.ids[step.v]);
      for (std::size_t k = 0; k < step.residual_vt.size(); ++k) {
        w.links[step.residual_vt[k]].alive = true;
        ts.add_link(cands[k], w, step.residual_vt[k]);
      }
      continue;
    }

    // split: counters from the packed subnetwork, then substitution
    int n_u = 0, n_v = 0, n_uv = 0;
    for (std::size_t tr = 0; tr < ts.link_ids.size(); ++tr) {
      bool hu = ts.has_node(tr, step.u), hv = ts.has_node(tr, step.v);
      n_u += hu && !hv;
      n_v += hv && !hu;
      n_uv += hu && hv;
    }
    if (step.u != w.source && n_u + n_uv != step.lambda_u)
      pack_fail("membership count off at " + w.ids[step.u]);
    if (step.v != w.source && n_v + n_uv != step.lambda_v)
      pack_fail("membership count off at " + w.ids[step.v]);
    if (step.eta_uv >= 0 && n_u + n_v + n_uv < step.eta_uv)
      pack_fail("pair coverage lost during recursion");

    for (const auto& [added_id, first_id, second_id] : step.added) {
      int owner = -1;
      for (std::size_t tr = 0; tr < ts.link_ids.size(); ++tr)
        if (ts.link_ids[tr].count(added_id)) {
          owner = static_cast<int>(tr);
          break;
        }
      if (owner == -1) pack_fail("split link unused by every tree");
      ts.link_ids[owner].erase(added_id);
      w.links[added_id].alive = false;
      w.links[first_id].alive = true;
      w.links[second_id].alive = true;
      ts.add_link(owner, w, first_id);
      ts.add_link(owner, w, second_id);
    }

    auto cands_u = trees_with(step.u, step.t, true, step.v);
    if (cands_u.size() < step.residual_ut.size())
      pack_fail("not enough trees at " + w.ids[step.u] + " for reattachment");
    for (std::size_t k = 0; k < step.residual_ut.size(); ++k) {
      w.links[step.residual_ut[k]].alive = true;
      ts.add_link(cands_u[k], w, step.residual_ut[k]);
    }
    auto cands_v = trees_with(step.v, step.t, true, step.u);
    if (cands_v.size() < step.residual_vt.size())
      pack_fail("not enough trees at " + w.ids[step.v] + " for reattachment");
    for (std::size_t k = 0; k < step.residual_vt.size(); ++k) {
      w.links[step.residual_vt[k]].alive = true;
      ts.add_link(cands_v[k], w, step.residual_vt[k]);
    }
  }

  for (const auto& tree : ts.link_ids) {
    std::vector<Link> links;
    for (int id : tree) {
      if (id >= w.original_links) pack_fail("synthetic link survived unwinding");
      links.push_back({w.ids[w.links[id].tail], w.ids[w.links[id].head]});
    }
    std::sort(links.begin(), links.end());
    out.packing.trees.push_back(std::move(links));
  }

  out.profile = flow_profile(net);
  out.pairs = same_bag_pairs(rd.bags, net.source());
  PackingReport rep = verify_packing(net, out.packing, out.profile, out.pairs);
  if (!rep.ok) pack_fail("verification rejected the result: " + rep.violation);
  return out;
}

}  // namespace detail

// Perfect tree packing of a link-minimal network along a width-2 tree
// decomposition of its topology. Each non-source node v lands in exactly
// lambda(v) trees; same-bag pairs are covered eta(u,v) times.
inline PackedNetwork perfect_tree_packing(const Network& net,
                                          const TreeDecomposition& td) {
  FlowProfile profile = flow_profile(net);
  for (const auto& [v, lam] : profile.lambda)
    if (lam != net.in_degree(v))
      throw Error(ErrorKind::precondition,
                  "network is not link-minimal: lambda(" + v +
                      ") differs from the in-degree");

  SimpleGraph topo = underlying_topology(net);
  TreeDecompositionReport tdr = verify_tree_decomposition(topo, td, 2);
  if (!tdr.ok)
    throw Error(ErrorKind::precondition,
                "invalid width-2 decomposition: " + tdr.violation);
  RootedDecomposition rd = normalize_rooted(td, net.source());
  return detail::pack_rooted(net, rd);
}

// Outcome of the routing pipeline: either a K4-minor witness or a packing
// of exactly multicast-rate many link-disjoint trees reaching every receiver.
struct RoutingResult {
  std::optional<MinorWitness> k4;  // set when routing may fall short
  int rate = 0;
  TreePacking packing;     // rooted at the original source
  Network reduced;         // link-minimal core the packing lives in
  Network packnet;         // reduced plus the virtual super source
  PackedNetwork raw;       // packing over packnet, with profile and pairs
};

// Adds a virtual super source with `rate` links, reduces to a link-minimal
// core, packs it perfectly, and strips the virtual layer again.
inline RoutingResult routing_multicast(const Network& net) {
  if (net.receivers().empty())
    throw Error(ErrorKind::precondition, "empty receiver set");

  RoutingResult res;
  SimpleGraph topo = underlying_topology(net);
  if (has_k4_minor(topo)) {
    res.k4 = find_k4_witness(topo);
    return res;
  }

  res.rate = multicast_rate(net);
  if (res.rate == 0) {
    res.reduced = net;
    res.packnet = net;
    return res;
  }

  NodeId super = "s'";
  while (net.has_node(super)) super += "'";
  std::vector<NodeId> nodes = net.nodes();
  nodes.push_back(super);
  std::vector<Link> links = net.links();
  for (int i = 0; i < res.rate; ++i) links.push_back({super, net.source()});
  Network wrapped =
      make_network(std::move(nodes), super, net.receivers(), std::move(links));

  res.packnet = make_link_minimal(wrapped);
  SimpleGraph packtopo = underlying_topology(res.packnet);
  auto td = tree_decomposition_w2(packtopo);
  if (!td)
    throw Error(ErrorKind::precondition,
                "treewidth-2 decomposition failed on a K4-minor-free network");
  RootedDecomposition rd = normalize_rooted(*td, super);
  res.raw = detail::pack_rooted(res.packnet, rd);

  // Strip the virtual layer: drop the super-source link from each tree.
  for (const auto& tree : res.raw.packing.trees) {
    std::vector<Link> stripped;
    int virt = 0;
    for (const Link& l : tree) {
      if (l.from == super) {
        ++virt;
        continue;
      }
      stripped.push_back(l);
    }
    if (virt != 1) detail::pack_fail("tree without its super-source link");
    if (!stripped.empty()) res.packing.trees.push_back(std::move(stripped));
  }
  if (static_cast<int>(res.raw.packing.trees.size()) != res.rate)
    detail::pack_fail("tree count differs from the multicast rate");

  std::vector<NodeId> core_nodes;
  for (const NodeId& v : res.packnet.nodes())
    if (v != super) core_nodes.push_back(v);
  std::vector<Link> core_links;
  for (const Link& l : res.packnet.links())
    if (l.from != super) core_links.push_back(l);
  res.reduced = make_network(std::move(core_nodes), net.source(),
                             net.receivers(), std::move(core_links));
  return res;
}

}  // namespace ncminor
