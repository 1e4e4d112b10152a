#include "doctest.h"

#include "kinv/oracle.hpp"
#include "kinv/treewidth_dp.hpp"
#include "test_support.hpp"

using namespace kinv;
using namespace kinv::test;

TEST_CASE("brute_decide on the named cases") {
  auto tri = triangle();
  auto fam = brute_decide(tri, 1);
  REQUIRE(fam.has_value());
  CHECK(verify_certificate(tri, *fam, 1).accepted);

  CHECK(!brute_decide(tri, 0).has_value());

  auto trans4 = graph_of(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  auto empty = brute_decide(trans4, 0);
  REQUIRE(empty.has_value());
  CHECK(empty->size() == 0);
}

TEST_CASE("brute_decide respects weight constraints") {
  auto tri = triangle();
  WeightConstraints all1;
  for (Vertex v : tri.vertices()) all1[v] = WeightSet::single(1);
  CHECK(!brute_decide(tri, 1, all1).has_value());

  WeightConstraints loose;
  for (Vertex v : tri.vertices()) loose[v] = WeightSet::all_up_to(1);
  auto fam = brute_decide(tri, 1, loose);
  REQUIRE(fam.has_value());
  CHECK(verify_certificate(tri, *fam, 1, loose).accepted);
}

TEST_CASE("brute_decide found certificates verify; success is monotone in k") {
  SplitMix64 rng(91);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = 1 + static_cast<int>(rng.bounded(6));
    auto g = random_oriented(n, rng);
    for (int k = 0; k + 1 <= 2; ++k) {
      auto fam = brute_decide(g, k);
      if (fam) {
        CHECK(verify_certificate(g, *fam, k).accepted);
        CHECK(brute_decide(g, k + 1).has_value());
      }
    }
  }
}

TEST_CASE("brute_inversion_number") {
  CHECK(brute_inversion_number(triangle(), 2) == 1);
  CHECK(brute_inversion_number(graph_of(3, {{1, 2}, {1, 3}}), 2) == 0);
  CHECK(!brute_inversion_number(triangle(), 0).has_value());
}

TEST_CASE("enumeration caps raise CapExceeded") {
  SolveLimits tight;
  tight.enumeration_bits = 4;
  CHECK_THROWS_AS(brute_decide(triangle(), 2, std::nullopt, tight), CapExceeded);
}

TEST_CASE("brute_table_entry on the named cases") {
  // leaf node: empty bag, empty P, k-tuple of empty sets
  auto tri = triangle();
  auto run = solve_treewidth_detailed(tri, 0, std::nullopt, {});
  const auto& ntd = run.ntd;
  int leaf = -1;
  for (int t = 0; t < static_cast<int>(ntd.nodes.size()); ++t)
    if (ntd.nodes[static_cast<std::size_t>(t)].kind ==
        NiceTreeDecomposition::Kind::Leaf)
      leaf = t;
  REQUIRE(leaf >= 0);
  CHECK(brute_table_entry(tri, ntd, leaf, {}, {}, 0));

  // k = 0 on a cyclic subtree: no entry with the full vertex set can be true
  int full_node = -1;
  auto vt = ntd.subtree_vertices();
  for (int t = 0; t < static_cast<int>(ntd.nodes.size()); ++t)
    if (vt[static_cast<std::size_t>(t)].size() == 3 &&
        ntd.nodes[static_cast<std::size_t>(t)].bag.size() == 1) {
      full_node = t;
      break;
    }
  REQUIRE(full_node >= 0);
  CHECK(!brute_table_entry(tri, ntd, full_node, {}, {}, 0));

  // k = 1 at the same node: enumeration over supersets of ({v}) decides it
  const Vertex v = ntd.nodes[static_cast<std::size_t>(full_node)].bag[0];
  bool any = false;
  BagLayout layout(ntd.nodes[static_cast<std::size_t>(full_node)].bag, 1);
  for (std::uint64_t key : brute_node_table(tri, ntd, full_node, layout)) {
    auto sets = layout.decode_sets(layout.key_smask(key));
    auto pairs = layout.decode_pairs(layout.key_pmask(key));
    if (sets[0] == std::vector<Vertex>{v}) {
      CHECK(brute_table_entry(tri, ntd, full_node, pairs, sets, 1));
      any = true;
    }
  }
  CHECK(any);
}

TEST_CASE("root-level brute_table_entry equals brute_decide") {
  SplitMix64 rng(97);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 1 + static_cast<int>(rng.bounded(6));
    auto g = random_oriented(n, rng);
    const int k = static_cast<int>(rng.bounded(2));
    auto run = solve_treewidth_detailed(g, k, std::nullopt, {});
    const int root = run.ntd.root;
    std::vector<std::vector<Vertex>> s(static_cast<std::size_t>(k));
    CHECK(brute_table_entry(g, run.ntd, root, {}, s, k) ==
          brute_decide(g, k).has_value());
  }
}
