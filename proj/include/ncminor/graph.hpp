#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ncminor {

using NodeId = std::string;

enum class ErrorKind { parse, precondition, bound };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// One unit-capacity directed link; parallel copies appear as repeated entries.
struct Link {
  NodeId from;
  NodeId to;

  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

// One physical copy of a link. `copy` numbers parallel duplicates of the
// same (from, to) pair starting at 0, in the order the network stores them.
struct LinkRef {
  NodeId from;
  NodeId to;
  int copy = 0;

  friend bool operator==(const LinkRef&, const LinkRef&) = default;
  friend auto operator<=>(const LinkRef&, const LinkRef&) = default;
};

// Directed unit-capacity multigraph with a source and a receiver set.
// Immutable after construction; all queries are const.
class Network {
 public:
  Network() = default;

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const NodeId& source() const { return source_; }
  const std::vector<NodeId>& receivers() const { return receivers_; }
  const std::vector<Link>& links() const { return links_; }

  bool has_node(const NodeId& v) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), v);
  }
  bool is_receiver(const NodeId& v) const {
    return std::binary_search(receivers_.begin(), receivers_.end(), v);
  }

  // Multiplicity of u -> v links.
  int count(const NodeId& u, const NodeId& v) const {
    Link probe{u, v};
    auto [lo, hi] = std::equal_range(links_.begin(), links_.end(), probe);
    return static_cast<int>(hi - lo);
  }

  int in_degree(const NodeId& v) const {
    int d = 0;
    for (const Link& l : links_) d += (l.to == v);
    return d;
  }
  int out_degree(const NodeId& v) const {
    int d = 0;
    for (const Link& l : links_) d += (l.from == v);
    return d;
  }

  std::vector<LinkRef> link_refs() const {
    std::vector<LinkRef> refs;
    refs.reserve(links_.size());
    for (std::size_t i = 0; i < links_.size(); ++i) {
      int copy = 0;
      while (i > 0 && links_[i - copy - 1] == links_[i]) ++copy;
      refs.push_back({links_[i].from, links_[i].to, copy});
    }
    return refs;
  }

  friend bool operator==(const Network&, const Network&) = default;

  friend Network make_network(std::vector<NodeId> nodes, NodeId source,
                              std::vector<NodeId> receivers,
                              std::vector<Link> links);

 private:
  std::vector<NodeId> nodes_;      // sorted, unique
  NodeId source_;
  std::vector<NodeId> receivers_;  // sorted, unique
  std::vector<Link> links_;        // sorted multiset
};

// Validating constructor shared by parser, generators and reductions.
inline Network make_network(std::vector<NodeId> nodes, NodeId source,
                            std::vector<NodeId> receivers,
                            std::vector<Link> links) {
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw Error(ErrorKind::parse, "duplicate node id");
  std::sort(receivers.begin(), receivers.end());
  receivers.erase(std::unique(receivers.begin(), receivers.end()),
                  receivers.end());
  std::sort(links.begin(), links.end());

  Network net;
  net.nodes_ = std::move(nodes);
  net.source_ = std::move(source);
  net.receivers_ = std::move(receivers);
  net.links_ = std::move(links);

  if (!net.has_node(net.source_))
    throw Error(ErrorKind::parse, "unknown node id: source " + net.source_);
  for (const NodeId& t : net.receivers_) {
    if (!net.has_node(t))
      throw Error(ErrorKind::parse, "unknown node id: receiver " + t);
    if (t == net.source_)
      throw Error(ErrorKind::parse, "source listed as receiver");
  }
  for (const Link& l : net.links_) {
    if (l.from == l.to)
      throw Error(ErrorKind::parse, "self-loop link at " + l.from);
    if (!net.has_node(l.from) || !net.has_node(l.to))
      throw Error(ErrorKind::parse,
                  "unknown node id in link " + l.from + "->" + l.to);
  }
  return net;
}

// Undirected simple graph: no loops, no parallel edges.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<std::pair<NodeId, NodeId>>& edges() const {
    return edges_;
  }

  bool has_node(const NodeId& v) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), v);
  }
  bool has_edge(const NodeId& u, const NodeId& v) const {
    auto e = std::minmax(u, v);
    return std::binary_search(edges_.begin(), edges_.end(),
                              std::pair<NodeId, NodeId>(e.first, e.second));
  }
  int degree(const NodeId& v) const {
    int d = 0;
    for (const auto& e : edges_) d += (e.first == v) + (e.second == v);
    return d;
  }
  std::vector<NodeId> neighbors(const NodeId& v) const {
    std::vector<NodeId> out;
    for (const auto& e : edges_) {
      if (e.first == v) out.push_back(e.second);
      if (e.second == v) out.push_back(e.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

  friend SimpleGraph make_graph(std::vector<NodeId> nodes,
                                std::vector<std::pair<NodeId, NodeId>> edges);

 private:
  std::vector<NodeId> nodes_;                       // sorted, unique
  std::vector<std::pair<NodeId, NodeId>> edges_;    // normalized, sorted
};

inline SimpleGraph make_graph(std::vector<NodeId> nodes,
                              std::vector<std::pair<NodeId, NodeId>> edges) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (auto& e : edges) {
    if (e.first == e.second)
      throw Error(ErrorKind::parse, "loop edge at " + e.first);
    if (e.second < e.first) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  SimpleGraph g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  for (const auto& e : g.edges_) {
    if (!g.has_node(e.first) || !g.has_node(e.second))
      throw Error(ErrorKind::parse,
                  "unknown node id in edge " + e.first + "-" + e.second);
  }
  return g;
}

// Drops orientation and merges duplicate links into single edges.
inline SimpleGraph underlying_topology(const Network& net) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(net.links().size());
  for (const Link& l : net.links()) {
    auto e = std::minmax(l.from, l.to);
    edges.emplace_back(e.first, e.second);
  }
  return make_graph(net.nodes(), std::move(edges));
}

struct AcyclicResult {
  bool acyclic = false;
  std::vector<NodeId> topo_order;  // set iff acyclic
};

// Kahn's algorithm with lexicographic tie-breaking for a stable order.
inline AcyclicResult is_acyclic(const Network& net) {
  std::map<NodeId, int> indeg;
  std::map<NodeId, std::vector<NodeId>> out;
  for (const NodeId& v : net.nodes()) indeg[v] = 0;
  for (const Link& l : net.links()) {
    ++indeg[l.to];
    out[l.from].push_back(l.to);
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (const auto& [v, d] : indeg)
    if (d == 0) ready.push(v);

  AcyclicResult res;
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    res.topo_order.push_back(v);
    for (const NodeId& w : out[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  res.acyclic = res.topo_order.size() == net.nodes().size();
  if (!res.acyclic) res.topo_order.clear();
  return res;
}

namespace detail {

// Integer-indexed view used by flow and packing internals.
struct IndexedNet {
  std::vector<NodeId> ids;                      // index -> id
  std::unordered_map<NodeId, int> index;        // id -> index
  std::vector<std::pair<int, int>> links;       // unit links
  int source = -1;

  explicit IndexedNet(const Network& net) {
    ids = net.nodes();
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) index[ids[i]] = i;
    links.reserve(net.links().size());
    for (const Link& l : net.links())
      links.emplace_back(index.at(l.from), index.at(l.to));
    source = index.at(net.source());
  }

  int at(const NodeId& v) const {
    auto it = index.find(v);
    if (it == index.end())
      throw Error(ErrorKind::precondition, "unknown node id: " + v);
    return it->second;
  }
};

}  // namespace detail

}  // namespace ncminor
