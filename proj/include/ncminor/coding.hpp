#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncminor/coloring.hpp"
#include "ncminor/flow.hpp"
#include "ncminor/gf.hpp"
#include "ncminor/graph.hpp"
#include "ncminor/subtree.hpp"

namespace ncminor {

// Linear code for two source flows: one encoding vector per unit link.
struct Code {
  int q = 2;                        // field order
  std::map<LinkRef, Vec2> vectors;  // covers every link of the network
};

struct CodeReport {
  bool ok = false;
  std::string violation;  // first failed obligation
};

namespace detail {

inline int rank2(const std::vector<Vec2>& vs, const Field& f) {
  const Vec2* base = nullptr;
  for (const Vec2& v : vs) {
    if (v.is_zero()) continue;
    if (!base) {
      base = &v;
      continue;
    }
    if (linearly_independent(*base, v, f)) return 2;
  }
  return base ? 1 : 0;
}

inline bool in_span(const Vec2& w, const std::vector<Vec2>& vs, const Field& f) {
  if (w.is_zero()) return true;
  const Vec2* base = nullptr;
  for (const Vec2& v : vs) {
    if (v.is_zero()) continue;
    if (!base) {
      base = &v;
      continue;
    }
    if (linearly_independent(*base, v, f)) return true;  // full plane
  }
  if (!base) return false;
  return !linearly_independent(*base, w, f);
}

}  // namespace detail

// Checks a code against its network:
//   coverage   - every link carries a nonzero vector
//   constancy  - links of one subtree carry equal vectors (when the network
//                decomposes; skipped otherwise)
//   local      - every non-source node only sends combinations of what it
//                receives
//   decoding   - receivers and in-degree-2 nodes see two independent vectors
inline CodeReport verify_code(const Network& net, const Code& code) {
  CodeReport rep;
  Field f = Field::make(code.q);

  for (const LinkRef& r : net.link_refs()) {
    auto it = code.vectors.find(r);
    if (it == code.vectors.end()) {
      rep.violation = "coverage: link " + r.from + "->" + r.to + " has no vector";
      return rep;
    }
    const Vec2& v = it->second;
    if (v.is_zero()) {
      rep.violation = "coverage: zero vector on " + r.from + "->" + r.to;
      return rep;
    }
    if (v.a < 0 || v.a >= f.q() || v.b < 0 || v.b >= f.q()) {
      rep.violation = "coverage: vector outside field on " + r.from + "->" + r.to;
      return rep;
    }
  }

  if (is_acyclic(net).acyclic && verify_two_minimal(net).ok) {
    SubtreeDecomposition dec = decompose(net);
    for (const Subtree& st : dec.subtrees) {
      const Vec2& first = code.vectors.at(st.root_link);
      for (const LinkRef& r : st.links)
        if (!(code.vectors.at(r) == first)) {
          rep.violation = "constancy: subtree rooted at " + st.root +
                          " carries two different vectors";
          return rep;
        }
    }
  }

  std::map<NodeId, std::vector<Vec2>> incoming;
  for (const LinkRef& r : net.link_refs())
    incoming[r.to].push_back(code.vectors.at(r));

  for (const LinkRef& r : net.link_refs()) {
    if (r.from == net.source()) continue;
    if (!detail::in_span(code.vectors.at(r), incoming[r.from], f)) {
      rep.violation = "local: vector on " + r.from + "->" + r.to +
                      " outside the span at " + r.from;
      return rep;
    }
  }

  for (const NodeId& v : net.nodes()) {
    bool must_decode = net.is_receiver(v) || net.in_degree(v) == 2;
    if (!must_decode || v == net.source()) continue;
    if (detail::rank2(incoming[v], f) < 2) {
      rep.violation = "decoding: node " + v + " receives rank below 2";
      return rep;
    }
  }

  rep.ok = true;
  return rep;
}

// Maps a proper coloring through the standard vector list: every link of
// subtree i carries standard_vectors(f)[coloring(i)].
inline Code assign_code(const Network& net, const SubtreeDecomposition& dec,
                        const Field& f, const Coloring& col) {
  if (col.num_colors > f.q() + 1)
    throw Error(ErrorKind::precondition,
                "coloring uses more than q+1 colors");
  SimpleGraph h = subtree_graph(dec);
  if (!is_proper_coloring(h, col))
    throw Error(ErrorKind::precondition, "coloring is not proper");

  std::vector<Vec2> palette = standard_vectors(f);
  Code code;
  code.q = f.q();
  for (std::size_t i = 0; i < dec.subtrees.size(); ++i) {
    int c = col.colors.at(std::to_string(i));
    for (const LinkRef& r : dec.subtrees[i].links)
      code.vectors[r] = palette[c];
  }
  CodeReport rep = verify_code(net, code);
  if (!rep.ok)
    throw Error(ErrorKind::precondition,
                "assigned code failed verification: " + rep.violation);
  return code;
}

// Smallest field result. q == 1 is the routing sentinel: two interference
// classes suffice, so the uncoded flows (1,0)/(0,1) already work and the
// emitted code (over GF(2)) performs no coding operation.
struct MinFieldResult {
  int q = 1;
  Code code;
  int chi = 0;  // chromatic number of the subtree graph
};

inline MinFieldResult min_field_size(const Network& net,
                                     int exact_chi_bound = 20) {
  SubtreeDecomposition dec = decompose(net);  // checks 2-minimal + acyclic
  SimpleGraph h = subtree_graph(dec);
  ChromaticResult chrom = chromatic_number_exact(h, exact_chi_bound);

  MinFieldResult res;
  res.chi = chrom.chi;
  if (chrom.chi <= 2) {
    res.q = 1;
    Field f2 = Field::make(2);
    res.code = assign_code(net, dec, f2, chrom.coloring);
    return res;
  }
  res.q = smallest_prime_power_at_least(chrom.chi - 1);
  Field f = Field::make(res.q);
  res.code = assign_code(net, dec, f, chrom.coloring);
  return res;
}

}  // namespace ncminor
