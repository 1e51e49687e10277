#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "ncminor/minor.hpp"
#include "ncminor/oracle.hpp"

using namespace ncminor;

TEST_CASE("edge contraction and deletion") {
  SimpleGraph k3 = complete_graph(3);
  SimpleGraph k2 = contract_edge(k3, "0", "1");
  CHECK(k2.nodes().size() == 2);
  CHECK(k2.edges().size() == 1);

  SimpleGraph c4 = fixtures::cycle_graph(4);
  SimpleGraph tri = contract_edge(c4, "c0", "c1");
  CHECK(tri.nodes().size() == 3);
  CHECK(tri.edges().size() == 3);  // forced triangle

  SimpleGraph diamond = delete_edge(complete_graph(4), "0", "1");
  CHECK(diamond.edges().size() == 5);
  CHECK_THROWS_AS(delete_edge(diamond, "0", "1"), Error);
  CHECK_THROWS_AS(contract_edge(diamond, "0", "1"), Error);

  // no loops or parallels ever appear
  std::mt19937 rng(71);
  for (int round = 0; round < 30; ++round) {
    SimpleGraph g = fixtures::random_graph(3 + rng() % 6, 50, rng);
    if (g.edges().empty()) continue;
    auto e = g.edges()[rng() % g.edges().size()];
    SimpleGraph c = contract_edge(g, e.first, e.second);
    for (const auto& [u, v] : c.edges()) REQUIRE(u != v);
    SimpleGraph d = delete_edge(g, e.first, e.second);
    REQUIRE(d.edges().size() == g.edges().size() - 1);
  }
}

TEST_CASE("K4 minor detection on named graphs") {
  CHECK(has_k4_minor(underlying_topology(fixtures::butterfly())));
  CHECK(has_k4_minor(complete_graph(4)));
  CHECK(has_k4_minor(complete_graph(5)));
  CHECK_FALSE(has_k4_minor(delete_edge(complete_graph(4), "0", "1")));
  CHECK_FALSE(has_k4_minor(fixtures::path_graph(6)));
  CHECK_FALSE(has_k4_minor(fixtures::cycle_graph(8)));
  CHECK_FALSE(has_k4_minor(fixtures::grid_graph(2, 5)));
  CHECK(has_k4_minor(fixtures::grid_graph(3, 3)));
}

TEST_CASE("K4 witnesses are structurally valid") {
  SimpleGraph butterfly_topo = underlying_topology(fixtures::butterfly());
  auto w = find_k4_witness(butterfly_topo);
  REQUIRE(w.has_value());
  CHECK(verify_minor_witness(butterfly_topo, complete_graph(4), *w));

  CHECK_FALSE(find_k4_witness(fixtures::cycle_graph(5)).has_value());

  std::mt19937 rng(73);
  for (int round = 0; round < 40; ++round) {
    SimpleGraph g = fixtures::random_graph(4 + rng() % 6, 20 + rng() % 60, rng);
    auto witness = find_k4_witness(g);
    REQUIRE(witness.has_value() == has_k4_minor(g));
    if (witness)
      REQUIRE(verify_minor_witness(g, complete_graph(4), *witness));
  }
}

TEST_CASE("reduction agrees with the exhaustive minor oracle") {
  std::mt19937 rng(79);
  for (int round = 0; round < 120; ++round) {
    SimpleGraph g = fixtures::random_graph(1 + rng() % 10, 10 + rng() % 75, rng);
    bool fast = has_k4_minor(g);
    bool brute = oracle::brute_minor(g, complete_graph(4)).has_value();
    REQUIRE(fast == brute);
  }
}

TEST_CASE("clique minor oracle basics") {
  CHECK(has_clique_minor(complete_graph(5), 4).found);
  CHECK_FALSE(has_clique_minor(fixtures::grid_graph(3, 3), 5).found);
  CHECK(has_clique_minor(underlying_topology(fixtures::butterfly()), 4).found);
  CHECK_FALSE(has_clique_minor(fixtures::path_graph(4), 3).found);  // a tree
  CHECK_THROWS_AS(has_clique_minor(fixtures::grid_graph(4, 4), 4, 12), Error);

  CliqueMinorResult res =
      has_clique_minor(underlying_topology(fixtures::butterfly()), 4);
  CHECK(verify_minor_witness(underlying_topology(fixtures::butterfly()),
                             complete_graph(4), res.witness));
}

TEST_CASE("minor monotonicity under edge additions") {
  std::mt19937 rng(83);
  for (int round = 0; round < 25; ++round) {
    SimpleGraph g = fixtures::random_graph(4 + rng() % 5, 40, rng);
    if (!oracle::brute_minor(g, complete_graph(4))) continue;
    // add a random missing edge; the minor must survive
    std::vector<std::pair<NodeId, NodeId>> missing;
    for (std::size_t i = 0; i < g.nodes().size(); ++i)
      for (std::size_t j = i + 1; j < g.nodes().size(); ++j)
        if (!g.has_edge(g.nodes()[i], g.nodes()[j]))
          missing.emplace_back(g.nodes()[i], g.nodes()[j]);
    if (missing.empty()) continue;
    auto extra = missing[rng() % missing.size()];
    std::vector<std::pair<NodeId, NodeId>> edges = g.edges();
    edges.push_back(extra);
    SimpleGraph bigger = make_graph(g.nodes(), edges);
    REQUIRE(oracle::brute_minor(bigger, complete_graph(4)).has_value());
  }
}

TEST_CASE("width-2 decompositions of named graphs") {
  SECTION("a 4-cycle gets two bags of three") {
    auto td = tree_decomposition_w2(fixtures::cycle_graph(4));
    REQUIRE(td.has_value());
    CHECK(td->bags.size() == 2);
    CHECK(td->width == 2);
    CHECK(verify_tree_decomposition(fixtures::cycle_graph(4), *td).ok);
  }
  SECTION("a single edge gets one bag of two") {
    SimpleGraph e = make_graph({"u", "v"}, {{"u", "v"}});
    auto td = tree_decomposition_w2(e);
    REQUIRE(td.has_value());
    CHECK(td->bags.size() == 1);
    CHECK(td->width == 1);
    CHECK(verify_tree_decomposition(e, *td, 1).ok);
  }
  SECTION("K4 has no width-2 decomposition") {
    CHECK_FALSE(tree_decomposition_w2(complete_graph(4)).has_value());
  }
  SECTION("empty graph") {
    auto td = tree_decomposition_w2(SimpleGraph{});
    REQUIRE(td.has_value());
    CHECK(td->bags.empty());
    CHECK(verify_tree_decomposition(SimpleGraph{}, *td).ok);
  }
}

TEST_CASE("verify_tree_decomposition names the violated property") {
  // chord-of-a-5-cycle example with a hand-built decomposition
  SimpleGraph g = make_graph(
      {"a", "b", "c", "d", "e"},
      {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"a", "e"}, {"b", "e"}});
  TreeDecomposition good;
  good.bags = {{"a", "b", "e"}, {"b", "c", "e"}, {"c", "d", "e"}};
  good.tree_edges = {{0, 1}, {1, 2}};
  good.width = 2;
  CHECK(verify_tree_decomposition(g, good).ok);

  SECTION("P2: dropping an edge's bag") {
    TreeDecomposition bad = good;
    bad.bags[0] = {"a", "e"};  // edge a-b no longer internal anywhere
    auto rep = verify_tree_decomposition(g, bad);
    CHECK_FALSE(rep.ok);
    CHECK_THAT(rep.violation, Catch::Matchers::StartsWith("P2"));
  }
  SECTION("P3: vertex in two disconnected parts") {
    TreeDecomposition bad = good;
    bad.bags.push_back({"a", "d"});
    bad.tree_edges = {{0, 1}, {1, 2}, {2, 3}};
    auto rep = verify_tree_decomposition(g, bad);
    CHECK_FALSE(rep.ok);
    CHECK_THAT(rep.violation, Catch::Matchers::StartsWith("P3"));
  }
  SECTION("P1: bag with a foreign node") {
    TreeDecomposition bad = good;
    bad.bags[2] = {"c", "d", "z"};
    auto rep = verify_tree_decomposition(g, bad);
    CHECK_FALSE(rep.ok);
    CHECK_THAT(rep.violation, Catch::Matchers::StartsWith("P1"));
  }
  SECTION("tree-ness") {
    TreeDecomposition bad = good;
    bad.tree_edges = {{0, 1}};
    auto rep = verify_tree_decomposition(g, bad);
    CHECK_FALSE(rep.ok);
    CHECK_THAT(rep.violation, Catch::Matchers::StartsWith("tree"));
  }
  SECTION("width") {
    TreeDecomposition bad = good;
    bad.width = 1;
    auto rep = verify_tree_decomposition(g, bad);
    CHECK_FALSE(rep.ok);
    CHECK_THAT(rep.violation, Catch::Matchers::StartsWith("width"));
  }
}

TEST_CASE("decomposition succeeds exactly on K4-minor-free graphs") {
  std::mt19937 rng(89);
  for (int round = 0; round < 80; ++round) {
    SimpleGraph g = fixtures::random_graph(1 + rng() % 9, 10 + rng() % 70, rng);
    auto td = tree_decomposition_w2(g);
    REQUIRE(td.has_value() == !has_k4_minor(g));
    if (td) {
      REQUIRE(verify_tree_decomposition(g, *td).ok);
      REQUIRE(td->width <= 2);
    }
  }
}

TEST_CASE("normalization yields one fresh vertex per non-root bag") {
  std::mt19937 rng(97);
  for (int round = 0; round < 50; ++round) {
    SimpleGraph g = fixtures::random_graph(2 + rng() % 8, 10 + rng() % 60, rng);
    auto td = tree_decomposition_w2(g);
    if (!td || g.nodes().empty()) continue;
    NodeId root_node = g.nodes()[rng() % g.nodes().size()];
    RootedDecomposition rd = normalize_rooted(*td, root_node);

    REQUIRE(verify_tree_decomposition(g, to_tree_decomposition(rd)).ok);
    bool root_seen = false;
    for (std::size_t i = 0; i < rd.bags.size(); ++i) {
      if (rd.parent[i] == -1) {
        REQUIRE(static_cast<int>(i) == rd.root);
        root_seen = true;
        std::set<NodeId> bag(rd.bags[i].begin(), rd.bags[i].end());
        REQUIRE(bag.count(root_node) == 1);
        continue;
      }
      std::set<NodeId> parent(rd.bags[rd.parent[i]].begin(),
                              rd.bags[rd.parent[i]].end());
      int fresh = 0;
      for (const NodeId& v : rd.bags[i]) fresh += !parent.count(v);
      REQUIRE(fresh == 1);
    }
    REQUIRE(root_seen);
  }
}
