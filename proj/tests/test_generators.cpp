#include "doctest.h"

#include <map>
#include <set>

#include "kinv/block.hpp"
#include "kinv/generators.hpp"
#include "kinv/instance_io.hpp"
#include "kinv/tree_decomposition.hpp"
#include "test_support.hpp"

using namespace kinv;
using namespace kinv::test;

namespace {

// width certified by eliminating along the given order
int elimination_width(const OrientedGraph& g, const std::vector<Vertex>& order) {
  std::vector<std::set<Vertex>> adj;
  std::map<Vertex, std::size_t> idx;
  for (Vertex v : g.vertices()) {
    idx[v] = adj.size();
    adj.emplace_back();
  }
  for (const auto& [u, v] : g.underlying_edges()) {
    adj[idx[u]].insert(v);
    adj[idx[v]].insert(u);
  }
  int width = 0;
  for (Vertex v : order) {
    auto nbrs = adj[idx[v]];
    width = std::max(width, static_cast<int>(nbrs.size()));
    for (Vertex a : nbrs)
      for (Vertex b : nbrs)
        if (a != b) adj[idx[a]].insert(b);
    for (Vertex a : nbrs) adj[idx[a]].erase(v);
    adj[idx[v]].clear();
  }
  return width;
}

}  // namespace

TEST_CASE("gen_tournament basics") {
  CHECK(gen_tournament(1, 5).arc_count() == 0);
  CHECK_THROWS_AS(gen_tournament(0, 5), std::invalid_argument);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto t = gen_tournament(3 + static_cast<int>(seed % 5), seed);
    CHECK(classify(t).is_tournament);
  }
}

TEST_CASE("gen_tournament is stable for a fixed seed") {
  auto a = gen_tournament(5, 7);
  auto b = gen_tournament(5, 7);
  CHECK(a == b);
  // golden instance bytes, frozen from the first run of this generator
  CHECK(format_instance(a, 1) ==
        "p inv 5 1\n"
        "a 1 2\n"
        "a 1 3\n"
        "a 2 3\n"
        "a 2 4\n"
        "a 2 5\n"
        "a 3 4\n"
        "a 3 5\n"
        "a 4 1\n"
        "a 4 5\n"
        "a 5 1\n");
}

TEST_CASE("two size-3 blocks share exactly one vertex") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = gen_block_digraph(2, 3, seed);
    if (g.order() != 5) continue;  // both cliques drew size 3
    CHECK(g.arc_count() == 6);
    auto bt = build_block_tree(g);
    int blocks = 0, cuts = 0;
    for (const auto& nd : bt.nodes) nd.is_block ? ++blocks : ++cuts;
    CHECK(blocks == 2);
    CHECK(cuts == 1);
    return;
  }
  FAIL("no seed produced two size-3 blocks");
}

TEST_CASE("gen_block_digraph stays in class") {
  CHECK(classify(gen_block_digraph(1, 4, 3)).is_tournament);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = gen_block_digraph(1 + static_cast<int>(seed % 4), 4, seed);
    CHECK(classify(g).is_block_graph);
    for (const auto& comp : classify(g).components)
      CHECK_NOTHROW(build_block_tree(induced_subgraph(g, comp)));
  }
  CHECK_THROWS_AS(gen_block_digraph(0, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_block_digraph(1, 1, 1), std::invalid_argument);
}

TEST_CASE("gen_partial_ktree_digraph witness certifies the width") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 7);
    const int width = 1 + static_cast<int>(seed % 3);
    if (width >= n) continue;
    auto inst = gen_partial_ktree_digraph(n, width, seed);
    CHECK(elimination_width(inst.graph, inst.elimination_order) <= width);
    CHECK(compute_tree_decomposition(inst.graph).width() <= width);
  }
  CHECK_THROWS_AS(gen_partial_ktree_digraph(3, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_partial_ktree_digraph(3, 0, 1), std::invalid_argument);
}

TEST_CASE("width = 1 partial k-trees are forest orientations") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = gen_partial_ktree_digraph(6, 1, seed);
    CHECK(elimination_width(inst.graph, inst.elimination_order) <= 1);
    CHECK(inst.graph.arc_count() <= 5);
  }
}

TEST_CASE("an undeleted ktree of width n-1 is a tournament") {
  // seed chosen so that no edge deletion fires for n = 3
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = gen_partial_ktree_digraph(3, 2, seed);
    if (inst.graph.arc_count() == 3) {
      CHECK(classify(inst.graph).is_tournament);
      return;
    }
  }
  FAIL("no seed kept all edges");
}

TEST_CASE("identical parameters and seed give identical bytes") {
  auto a = gen_partial_ktree_digraph(8, 2, 99);
  auto b = gen_partial_ktree_digraph(8, 2, 99);
  CHECK(a.graph == b.graph);
  CHECK(a.elimination_order == b.elimination_order);
  CHECK(format_instance(a.graph, 2) == format_instance(b.graph, 2));
}
