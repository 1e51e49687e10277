#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "ncminor/graph.hpp"

namespace ncminor {

namespace detail {

// Edmonds-Karp on aggregated arc capacities. Instances here are small;
// exact integral values matter, speed does not.
class MaxFlowSolver {
 public:
  explicit MaxFlowSolver(int num_nodes) : head_(num_nodes, -1) {}

  void add_arc(int from, int to, int capacity) {
    arcs_.push_back({to, head_[from], capacity});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  int max_flow(int s, int t) {
    int total = 0;
    for (;;) {
      std::vector<int> via(head_.size(), -1);
      std::vector<char> seen(head_.size(), 0);
      std::queue<int> q;
      q.push(s);
      seen[s] = 1;
      while (!q.empty() && !seen[t]) {
        int v = q.front();
        q.pop();
        for (int a = head_[v]; a != -1; a = arcs_[a].next) {
          if (arcs_[a].capacity > 0 && !seen[arcs_[a].to]) {
            seen[arcs_[a].to] = 1;
            via[arcs_[a].to] = a;
            q.push(arcs_[a].to);
          }
        }
      }
      if (!seen[t]) break;
      int push = std::numeric_limits<int>::max();
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to)
        push = std::min(push, arcs_[via[v]].capacity);
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].capacity -= push;
        arcs_[via[v] ^ 1].capacity += push;
      }
      total += push;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    int next;
    int capacity;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

inline std::map<std::pair<int, int>, int> aggregate_caps(
    const std::vector<std::pair<int, int>>& links) {
  std::map<std::pair<int, int>, int> caps;
  for (const auto& l : links) ++caps[l];
  return caps;
}

inline int max_flow_indexed(const IndexedNet& view, int s, int t) {
  if (s == t) return 0;
  MaxFlowSolver solver(static_cast<int>(view.ids.size()));
  for (const auto& [arc, cap] : aggregate_caps(view.links))
    solver.add_arc(arc.first, arc.second, cap);
  return solver.max_flow(s, t);
}

}  // namespace detail

// Max-flow value from the source to v under unit link capacities.
inline int max_flow(const Network& net, const NodeId& v) {
  if (v == net.source())
    throw Error(ErrorKind::precondition, "max_flow target is the source");
  detail::IndexedNet view(net);
  return detail::max_flow_indexed(view, view.source, view.at(v));
}

struct FlowProfile {
  std::map<NodeId, int> lambda;  // per non-source node
  int rate_nc = 0;               // min over receivers
};

inline FlowProfile flow_profile(const Network& net) {
  detail::IndexedNet view(net);
  FlowProfile p;
  p.rate_nc = std::numeric_limits<int>::max();
  for (const NodeId& v : net.nodes()) {
    if (v == net.source()) continue;
    p.lambda[v] = detail::max_flow_indexed(view, view.source, view.at(v));
  }
  for (const NodeId& t : net.receivers())
    p.rate_nc = std::min(p.rate_nc, p.lambda.at(t));
  if (net.receivers().empty()) p.rate_nc = 0;
  return p;
}

inline int multicast_rate(const Network& net) {
  if (net.receivers().empty())
    throw Error(ErrorKind::precondition, "empty receiver set");
  detail::IndexedNet view(net);
  int rate = std::numeric_limits<int>::max();
  for (const NodeId& t : net.receivers())
    rate = std::min(rate, detail::max_flow_indexed(view, view.source, view.at(t)));
  return rate;
}

// Number of links entering the node set U from outside.
inline int rho(const Network& net, const std::set<NodeId>& u_set) {
  for (const NodeId& v : u_set) {
    if (v == net.source())
      throw Error(ErrorKind::precondition, "rho set contains the source");
    if (!net.has_node(v))
      throw Error(ErrorKind::precondition, "unknown node id: " + v);
  }
  int entering = 0;
  for (const Link& l : net.links())
    entering += (!u_set.count(l.from) && u_set.count(l.to));
  return entering;
}

// Minimum number of links entering any node set that contains both u and v
// but not the source. Computed as a max-flow to a merged virtual sink.
inline int eta(const Network& net, const NodeId& u, const NodeId& v) {
  if (u == net.source() || v == net.source())
    throw Error(ErrorKind::precondition, "eta endpoints must be non-source");
  detail::IndexedNet view(net);
  int iu = view.at(u);
  int iv = view.at(v);
  if (iu == iv) return detail::max_flow_indexed(view, view.source, iu);

  int sink = static_cast<int>(view.ids.size());
  int big = 2 * std::max<int>(1, static_cast<int>(view.links.size()));
  detail::MaxFlowSolver solver(sink + 1);
  for (const auto& [arc, cap] : detail::aggregate_caps(view.links))
    solver.add_arc(arc.first, arc.second, cap);
  solver.add_arc(iu, sink, big);
  solver.add_arc(iv, sink, big);
  return solver.max_flow(view.source, sink);
}

namespace detail {

// Shrinks the node set after a reduction: keeps the source, receivers, and
// every endpoint of a surviving link.
inline Network strip_isolated(const Network& net, std::vector<Link> links) {
  std::set<NodeId> keep;
  keep.insert(net.source());
  for (const NodeId& t : net.receivers()) keep.insert(t);
  for (const Link& l : links) {
    keep.insert(l.from);
    keep.insert(l.to);
  }
  return make_network(std::vector<NodeId>(keep.begin(), keep.end()),
                      net.source(), net.receivers(), std::move(links));
}

}  // namespace detail

// Removes each link (in lexicographic order) whose removal leaves every
// node's max-flow intact. The result satisfies lambda(v) = rho(v) for all
// non-source v; removing any surviving link decreases some lambda.
inline Network make_link_minimal(const Network& net) {
  FlowProfile base = flow_profile(net);
  std::vector<Link> links = net.links();  // sorted already
  std::vector<char> alive(links.size(), 1);

  auto lambda_preserved = [&](const std::vector<Link>& trial) {
    Network probe = detail::strip_isolated(net, trial);
    detail::IndexedNet view(probe);
    for (const auto& [v, lam] : base.lambda) {
      if (lam == 0) continue;
      if (!probe.has_node(v)) return false;
      if (detail::max_flow_indexed(view, view.source, view.at(v)) < lam)
        return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < links.size(); ++i) {
    alive[i] = 0;
    std::vector<Link> trial;
    for (std::size_t k = 0; k < links.size(); ++k)
      if (alive[k]) trial.push_back(links[k]);
    if (!lambda_preserved(trial)) alive[i] = 1;
  }

  std::vector<Link> kept;
  for (std::size_t i = 0; i < links.size(); ++i)
    if (alive[i]) kept.push_back(links[i]);
  return detail::strip_isolated(net, std::move(kept));
}

// Removes each link (lexicographic order) whose removal keeps every
// receiver's max-flow at 2 or more. The result carries multicast rate
// exactly 2 and no link is redundant for it.
inline Network make_two_minimal(const Network& net) {
  if (net.receivers().empty())
    throw Error(ErrorKind::precondition, "empty receiver set");
  if (multicast_rate(net) < 2)
    throw Error(ErrorKind::precondition, "multicast rate below 2");

  std::vector<Link> links = net.links();
  std::vector<char> alive(links.size(), 1);

  auto rate_two = [&](const std::vector<Link>& trial) {
    Network probe = detail::strip_isolated(net, trial);
    detail::IndexedNet view(probe);
    for (const NodeId& t : net.receivers())
      if (detail::max_flow_indexed(view, view.source, view.at(t)) < 2)
        return false;
    return true;
  };

  for (std::size_t i = 0; i < links.size(); ++i) {
    alive[i] = 0;
    std::vector<Link> trial;
    for (std::size_t k = 0; k < links.size(); ++k)
      if (alive[k]) trial.push_back(links[k]);
    if (!rate_two(trial)) alive[i] = 1;
  }

  std::vector<Link> kept;
  for (std::size_t i = 0; i < links.size(); ++i)
    if (alive[i]) kept.push_back(links[i]);

  // Drop nodes left with no incident link (source and receivers stay).
  std::set<NodeId> keep;
  keep.insert(net.source());
  for (const NodeId& t : net.receivers()) keep.insert(t);
  for (const Link& l : kept) {
    keep.insert(l.from);
    keep.insert(l.to);
  }
  return make_network(std::vector<NodeId>(keep.begin(), keep.end()),
                      net.source(), net.receivers(), std::move(kept));
}

struct LinkMinimalReport {
  bool lambda_equals_indegree = false;
  bool every_removal_decreases = false;
  std::string detail;

  bool ok() const { return lambda_equals_indegree && every_removal_decreases; }
};

// Checks both characterizations of link minimality: lambda(v) = rho(v) for
// every non-source node, and no single link removal preserves all max-flows.
inline LinkMinimalReport verify_link_minimal(const Network& net) {
  LinkMinimalReport report;
  FlowProfile base = flow_profile(net);

  report.lambda_equals_indegree = true;
  for (const NodeId& v : net.nodes()) {
    if (v == net.source()) continue;
    if (base.lambda.at(v) != net.in_degree(v)) {
      report.lambda_equals_indegree = false;
      report.detail = "lambda(" + v + ") != in-degree";
      break;
    }
  }

  report.every_removal_decreases = true;
  const std::vector<Link>& links = net.links();
  for (std::size_t i = 0; i < links.size() && report.every_removal_decreases;
       ++i) {
    std::vector<Link> trial;
    for (std::size_t k = 0; k < links.size(); ++k)
      if (k != i) trial.push_back(links[k]);
    Network probe = detail::strip_isolated(net, std::move(trial));
    detail::IndexedNet view(probe);
    bool dropped = false;
    for (const auto& [v, lam] : base.lambda) {
      if (lam == 0) continue;
      if (!probe.has_node(v) ||
          detail::max_flow_indexed(view, view.source, view.at(v)) < lam) {
        dropped = true;
        break;
      }
    }
    if (!dropped) {
      report.every_removal_decreases = false;
      report.detail = "removable link " + links[i].from + "->" + links[i].to;
    }
  }
  return report;
}

struct TwoMinimalReport {
  bool ok = false;
  std::string violation;  // named condition when not ok
};

// Rate-2 feasibility, exhaustive single-link minimality, in-degree bound.
inline TwoMinimalReport verify_two_minimal(const Network& net) {
  TwoMinimalReport r;
  if (net.receivers().empty()) {
    r.violation = "empty receiver set";
    return r;
  }
  detail::IndexedNet view(net);
  for (const NodeId& t : net.receivers()) {
    if (detail::max_flow_indexed(view, view.source, view.at(t)) < 2) {
      r.violation = "receiver " + t + " has max-flow below 2";
      return r;
    }
  }
  for (const NodeId& v : net.nodes()) {
    if (v == net.source()) continue;
    if (net.in_degree(v) > 2) {
      r.violation = "node " + v + " has in-degree above 2";
      return r;
    }
    if (net.in_degree(v) == 0) {
      r.violation = "non-source node " + v + " has no incoming link";
      return r;
    }
  }
  const std::vector<Link>& links = net.links();
  for (std::size_t i = 0; i < links.size(); ++i) {
    std::vector<Link> trial;
    for (std::size_t k = 0; k < links.size(); ++k)
      if (k != i) trial.push_back(links[k]);
    Network probe = detail::strip_isolated(net, std::move(trial));
    detail::IndexedNet pview(probe);
    bool essential = false;
    for (const NodeId& t : net.receivers()) {
      if (detail::max_flow_indexed(pview, pview.source, pview.at(t)) < 2) {
        essential = true;
        break;
      }
    }
    if (!essential) {
      r.violation =
          "link " + links[i].from + "->" + links[i].to + " is redundant";
      return r;
    }
  }
  r.ok = true;
  return r;
}

}  // namespace ncminor
