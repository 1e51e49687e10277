#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ncminor/graph.hpp"

namespace ncminor {

using json = nlohmann::json;

// Network wire format:
//   {"nodes":[...], "source":"s", "receivers":["t1",...],
//    "links":[{"from":"u","to":"v","count":k}, ...]}
// "count" defaults to 1; repeated {from,to} entries accumulate.

inline Network network_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "network must be an object");
  for (const char* key : {"nodes", "source", "receivers", "links"})
    if (!j.contains(key))
      throw Error(ErrorKind::parse, std::string("missing field: ") + key);
  if (!j["nodes"].is_array() || !j["receivers"].is_array() ||
      !j["links"].is_array() || !j["source"].is_string())
    throw Error(ErrorKind::parse, "malformed network field types");

  std::vector<NodeId> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw Error(ErrorKind::parse, "node id must be a string");
    nodes.push_back(n.get<NodeId>());
  }
  std::vector<NodeId> receivers;
  for (const auto& r : j["receivers"]) {
    if (!r.is_string())
      throw Error(ErrorKind::parse, "receiver id must be a string");
    receivers.push_back(r.get<NodeId>());
  }
  std::vector<Link> links;
  for (const auto& l : j["links"]) {
    if (!l.is_object() || !l.contains("from") || !l.contains("to") ||
        !l["from"].is_string() || !l["to"].is_string())
      throw Error(ErrorKind::parse, "link must be {from,to[,count]}");
    int count = 1;
    if (l.contains("count")) {
      if (!l["count"].is_number_integer() || l["count"].get<int>() < 1)
        throw Error(ErrorKind::parse, "link count must be a positive integer");
      count = l["count"].get<int>();
    }
    for (int i = 0; i < count; ++i)
      links.push_back({l["from"].get<NodeId>(), l["to"].get<NodeId>()});
  }
  return make_network(std::move(nodes), j["source"].get<NodeId>(),
                      std::move(receivers), std::move(links));
}

inline Network parse_network(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::parse, "malformed JSON");
  return network_from_json(j);
}

// Emits aggregated counts, links sorted by (from, to).
inline json network_to_json(const Network& net) {
  json links = json::array();
  const auto& ls = net.links();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t k = i;
    while (k < ls.size() && ls[k] == ls[i]) ++k;
    links.push_back({{"from", ls[i].from},
                     {"to", ls[i].to},
                     {"count", static_cast<int>(k - i)}});
    i = k;
  }
  return json{{"nodes", net.nodes()},
              {"source", net.source()},
              {"receivers", net.receivers()},
              {"links", links}};
}

inline std::string serialize_network(const Network& net) {
  return network_to_json(net).dump(2);
}

// Graph wire format: {"nodes":[...], "edges":[["u","v"],...]}

inline SimpleGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges") ||
      !j["nodes"].is_array() || !j["edges"].is_array())
    throw Error(ErrorKind::parse, "graph must be {nodes,edges}");
  std::vector<NodeId> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw Error(ErrorKind::parse, "node id must be a string");
    nodes.push_back(n.get<NodeId>());
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string())
      throw Error(ErrorKind::parse, "edge must be a pair of node ids");
    edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
  }
  return make_graph(std::move(nodes), std::move(edges));
}

inline SimpleGraph parse_graph(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::parse, "malformed JSON");
  return graph_from_json(j);
}

inline json graph_to_json(const SimpleGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.first, e.second});
  return json{{"nodes", g.nodes()}, {"edges", edges}};
}

inline std::string serialize_graph(const SimpleGraph& g) {
  return graph_to_json(g).dump(2);
}

}  // namespace ncminor
