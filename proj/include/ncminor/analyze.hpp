#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncminor/coding.hpp"
#include "ncminor/flow.hpp"
#include "ncminor/graph.hpp"
#include "ncminor/json_io.hpp"
#include "ncminor/minor.hpp"
#include "ncminor/subtree.hpp"
#include "ncminor/treepack.hpp"

namespace ncminor {

// Aggregated verdicts for one network. Optional fields stay empty when the
// corresponding pipeline stage does not apply (cyclic input, rate below 2,
// coloring above the exact bound).
struct AnalysisReport {
  int rate_nc = 0;
  std::map<NodeId, int> lambda;
  bool acyclic = false;
  bool two_minimal = false;
  std::string two_minimal_violation;
  std::optional<int> subtree_count;
  std::optional<int> chromatic_number_subtree;
  std::optional<int> min_field_size;  // 1 = routing sentinel
  bool k4_minor = false;
  std::optional<bool> routing_sufficient;
  std::optional<SubtreeDecomposition> decomposition;
  std::optional<SimpleGraph> subtree_graph_out;
  std::optional<Code> code;
};

struct AnalyzeOptions {
  int exact_chi_bound = 20;
};

inline AnalysisReport analyze(const Network& net,
                              const AnalyzeOptions& opts = {}) {
  AnalysisReport rep;
  if (net.receivers().empty())
    throw Error(ErrorKind::precondition, "empty receiver set");

  FlowProfile profile = flow_profile(net);
  rep.lambda = profile.lambda;
  rep.rate_nc = profile.rate_nc;
  rep.acyclic = is_acyclic(net).acyclic;

  TwoMinimalReport two = verify_two_minimal(net);
  rep.two_minimal = two.ok;
  rep.two_minimal_violation = two.violation;

  SimpleGraph topo = underlying_topology(net);
  rep.k4_minor = has_k4_minor(topo);
  if (!rep.k4_minor) rep.routing_sufficient = true;

  if (rep.two_minimal && rep.acyclic) {
    rep.decomposition = decompose(net);
    rep.subtree_graph_out = subtree_graph(*rep.decomposition);
    rep.subtree_count = static_cast<int>(rep.decomposition->subtrees.size());
    if (static_cast<int>(rep.subtree_graph_out->nodes().size()) <=
        opts.exact_chi_bound) {
      MinFieldResult mf = min_field_size(net, opts.exact_chi_bound);
      rep.chromatic_number_subtree = mf.chi;
      rep.min_field_size = mf.q;
      rep.code = mf.code;
      // For a 2-minimal session, routing reaches rate 2 exactly when two
      // interference classes suffice.
      rep.routing_sufficient = !rep.k4_minor || mf.q == 1;
    }
  }
  return rep;
}

inline json minor_witness_to_json(const MinorWitness& w) {
  json sets = json::object();
  for (const auto& [pattern_node, branch] : w) sets[pattern_node] = branch;
  return json{{"branch_sets", sets}};
}

inline json tree_decomposition_to_json(const TreeDecomposition& td) {
  json bags = json::array();
  for (const auto& bag : td.bags) bags.push_back(bag);
  json edges = json::array();
  for (const auto& [a, b] : td.tree_edges) edges.push_back({a, b});
  return json{{"bags", bags}, {"tree_edges", edges}, {"width", td.width}};
}

inline json coloring_to_json(const Coloring& col) {
  json colors = json::object();
  for (const auto& [v, c] : col.colors) colors[v] = c;
  return json{{"colors", colors}, {"num_colors", col.num_colors}};
}

inline json code_to_json(const Code& code) {
  json links = json::array();
  for (const auto& [ref, vec] : code.vectors)
    links.push_back({{"from", ref.from},
                     {"to", ref.to},
                     {"copy", ref.copy},
                     {"vector", {vec.a, vec.b}}});
  return json{{"field", code.q}, {"links", links}};
}

inline json decomposition_to_json(const SubtreeDecomposition& dec) {
  json out = json::array();
  for (const Subtree& st : dec.subtrees) {
    json links = json::array();
    for (const LinkRef& r : st.links)
      links.push_back({{"from", r.from}, {"to", r.to}, {"copy", r.copy}});
    out.push_back({{"root", st.root},
                   {"root_link", {{"from", st.root_link.from},
                                  {"to", st.root_link.to},
                                  {"copy", st.root_link.copy}}},
                   {"links", links},
                   {"leaves", st.leaves}});
  }
  return out;
}

inline json packing_to_json(const TreePacking& tp, const NodeId& source) {
  json trees = json::array();
  for (const auto& tree : tp.trees) {
    json t = json::array();
    for (const Link& l : tree) t.push_back({{"from", l.from}, {"to", l.to}});
    trees.push_back(t);
  }
  json membership = json::object();
  for (const auto& [v, c] : tp.membership_counts(source)) membership[v] = c;
  return json{{"trees", trees}, {"membership", membership}};
}

inline json report_to_json(const AnalysisReport& rep) {
  json lambda = json::object();
  for (const auto& [v, l] : rep.lambda) lambda[v] = l;
  json j{{"rate_nc", rep.rate_nc},
         {"lambda", lambda},
         {"acyclic", rep.acyclic},
         {"two_minimal", rep.two_minimal},
         {"k4_minor", rep.k4_minor}};
  if (!rep.two_minimal) j["two_minimal_violation"] = rep.two_minimal_violation;
  j["subtree_count"] =
      rep.subtree_count ? json(*rep.subtree_count) : json(nullptr);
  j["chromatic_number_subtree"] = rep.chromatic_number_subtree
                                      ? json(*rep.chromatic_number_subtree)
                                      : json(nullptr);
  j["min_field_size"] =
      rep.min_field_size ? json(*rep.min_field_size) : json(nullptr);
  j["routing_sufficient"] =
      rep.routing_sufficient ? json(*rep.routing_sufficient) : json(nullptr);
  if (rep.decomposition) {
    j["decomposition"] = decomposition_to_json(*rep.decomposition);
    j["subtree_graph"] = graph_to_json(*rep.subtree_graph_out);
  }
  if (rep.code) j["code"] = code_to_json(*rep.code);
  return j;
}

}  // namespace ncminor
