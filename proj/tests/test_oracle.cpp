#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "ncminor/construct.hpp"
#include "ncminor/oracle.hpp"

using namespace ncminor;

TEST_CASE("brute chromatic on named graphs") {
  CHECK(oracle::brute_chromatic(complete_graph(4)) == 4);
  CHECK(oracle::brute_chromatic(fixtures::cycle_graph(6)) == 2);
  CHECK(oracle::brute_chromatic(fixtures::cycle_graph(5)) == 3);
  CHECK(oracle::brute_chromatic(fixtures::grotzsch()) == 4);
  CHECK_THROWS_AS(oracle::brute_chromatic(fixtures::grid_graph(4, 4)), Error);
}

TEST_CASE("brute min field on named networks") {
  CHECK(oracle::brute_min_field(fixtures::butterfly()) == 2);
  CHECK(oracle::brute_min_field(fixtures::parallel_links(2)) == 1);
  CHECK(oracle::brute_min_field(network_from_graph(complete_graph(4))) == 3);
}

TEST_CASE("brute minor on named graphs") {
  CHECK(oracle::brute_minor(complete_graph(5), complete_graph(4)).has_value());
  CHECK_FALSE(
      oracle::brute_minor(fixtures::path_graph(6), complete_graph(3)).has_value());
  auto butterfly_w = oracle::brute_minor(
      underlying_topology(fixtures::butterfly()), complete_graph(4));
  REQUIRE(butterfly_w.has_value());
  CHECK(verify_minor_witness(underlying_topology(fixtures::butterfly()),
                             complete_graph(4), *butterfly_w));
  CHECK_FALSE(
      oracle::brute_minor(fixtures::grid_graph(3, 3), complete_graph(5))
          .has_value());
  CHECK_THROWS_AS(
      oracle::brute_minor(fixtures::grid_graph(4, 4), complete_graph(4)), Error);
}

TEST_CASE("brute tree packing reproduces the butterfly gap") {
  Network butterfly = fixtures::butterfly();
  CHECK_FALSE(oracle::brute_tree_packing(butterfly, 2).has_value());
  auto one = oracle::brute_tree_packing(butterfly, 1);
  REQUIRE(one.has_value());
  REQUIRE(one->trees.size() == 1);
  // the single tree reaches both receivers
  std::set<NodeId> touched;
  for (const Link& l : one->trees[0]) {
    touched.insert(l.from);
    touched.insert(l.to);
  }
  CHECK(touched.count("t1"));
  CHECK(touched.count("t2"));

  auto both = oracle::brute_tree_packing(fixtures::diamond(), 2);
  REQUIRE(both.has_value());
  CHECK(both->trees.size() == 2);
  CHECK_THROWS_AS(oracle::brute_tree_packing(
                      make_network({"s", "t"}, "s", {"t"},
                                   std::vector<Link>(15, Link{"s", "t"})),
                      2),
                  Error);
}

TEST_CASE("perfect graph recognition") {
  CHECK(oracle::is_perfect_small(fixtures::path_graph(6)));       // bipartite
  CHECK(oracle::is_perfect_small(fixtures::grid_graph(3, 3)));    // bipartite
  CHECK(oracle::is_perfect_small(complete_graph(5)));
  CHECK_FALSE(oracle::is_perfect_small(fixtures::cycle_graph(5)));
  CHECK_FALSE(oracle::is_perfect_small(fixtures::cycle_graph(7)));
  CHECK_FALSE(
      oracle::is_perfect_small(fixtures::complement(fixtures::cycle_graph(7))));
  // C5 is self-complementary, C4 and C6 are fine
  CHECK(oracle::is_perfect_small(fixtures::cycle_graph(4)));
  CHECK(oracle::is_perfect_small(fixtures::cycle_graph(6)));
}

TEST_CASE("perfect subtree graphs bound the oracle field size") {
  // with a perfect interference graph, K_{q+2}-minor-freeness caps the field
  std::mt19937 rng(107);
  int checked = 0;
  for (int attempt = 0; attempt < 60 && checked < 12; ++attempt) {
    SimpleGraph h = fixtures::random_graph(3 + rng() % 2, 50, rng);
    bool usable = !h.edges().empty();
    for (const NodeId& v : h.nodes())
      if (h.degree(v) == 0) usable = false;
    if (!usable) continue;
    Network net = network_from_graph(h);
    SimpleGraph sg = subtree_graph(decompose(net));
    if (!oracle::is_perfect_small(sg)) continue;
    SimpleGraph topo = underlying_topology(net);

    for (int q : {2, 3}) {
      if (oracle::brute_minor(topo, complete_graph(q + 2))) continue;
      ++checked;
      int field = oracle::brute_min_field(net);
      int cap = smallest_prime_power_at_least(q);
      REQUIRE((field == 1 || field <= cap));
    }
  }
  REQUIRE(checked >= 6);
}
