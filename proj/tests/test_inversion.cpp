#include "doctest.h"

#include <algorithm>

#include "kinv/inversion.hpp"
#include "test_support.hpp"

using namespace kinv;
using namespace kinv::test;

TEST_CASE("apply_family flips exactly the pairs inside an odd count of sets") {
  auto tri = triangle();
  auto flipped = apply_family(tri, family_of({{1, 2}}));
  CHECK(flipped.has_arc(1, 0));
  CHECK(flipped.has_arc(1, 2));
  CHECK(flipped.has_arc(2, 0));
  CHECK(is_acyclic(flipped).is_dag());

  CHECK(apply_family(tri, family_of({{}})) == tri);
  CHECK(apply_family(tri, family_of({{1, 3}, {1, 3}})) == tri);
}

TEST_CASE("foreign vertices never change arcs") {
  auto tri = triangle();
  CHECK(apply_family(tri, family_of({{4, 5}, {1, 9}})) == tri);
}

TEST_CASE("characteristic vectors read memberships in order") {
  auto vecs = characteristic_vectors(family_of({{1, 2}, {2}}), {0, 1, 2});
  REQUIRE(vecs.size() == 3);
  CHECK(vecs[0].to_string() == "10");
  CHECK(vecs[1].to_string() == "11");
  CHECK(vecs[2].to_string() == "00");

  auto none = characteristic_vectors(DecyclingFamily(), {0, 1});
  CHECK(none[0].width() == 0);

  auto twice = characteristic_vectors(family_of({{1}, {1}}), {0});
  CHECK(twice[0].to_string() == "11");
  CHECK(twice[0].weight() == 2);
}

TEST_CASE("verify_certificate per the named cases") {
  auto tri = triangle();
  CHECK(verify_certificate(tri, family_of({{1, 2}}), 1).accepted);

  auto rej = verify_certificate(tri, family_of({{1, 2, 3}}), 1);
  CHECK(!rej.accepted);
  CHECK(rej.kind == RejectKind::CyclicResult);
  CHECK(rej.reason == "cyclic-result");

  auto arc = graph_of(2, {{1, 2}});
  WeightConstraints a{{0, WeightSet::single(1)}};
  auto wv = verify_certificate(arc, family_of({{}}), 1, a);
  CHECK(!wv.accepted);
  CHECK(wv.kind == RejectKind::WeightViolation);
  CHECK(wv.offending_vertex == 0);
  CHECK(wv.reason == "weight-violation(1)");

  auto tl = verify_certificate(tri, family_of({{1}, {2}}), 1);
  CHECK(!tl.accepted);
  CHECK(tl.kind == RejectKind::TooLong);
}

TEST_CASE("shorter families pass weight checks over k coordinates") {
  auto arc = graph_of(2, {{1, 2}});
  WeightConstraints a{{0, WeightSet::single(0)}, {1, WeightSet::single(0)}};
  CHECK(verify_certificate(arc, DecyclingFamily(), 2, a).accepted);
}

TEST_CASE("inversion algebra: order invariance, involution, no-ops") {
  SplitMix64 rng(71);
  for (int rep = 0; rep < 400; ++rep) {
    const int n = 1 + static_cast<int>(rng.bounded(8));
    auto g = random_oriented(n, rng);
    auto f = random_family(g.vertices(), 1 + static_cast<int>(rng.bounded(4)), rng);

    // order invariance: reverse is as good as any permutation
    auto rev = f;
    std::reverse(rev.sets.begin(), rev.sets.end());
    CHECK(apply_family(g, f) == apply_family(g, rev));

    // involution
    DecyclingFamily one;
    one.sets.push_back(f.sets[0]);
    CHECK(apply_family(apply_family(g, one), one) == g);

    // singletons are no-ops
    DecyclingFamily single = family_of({{1}});
    CHECK(apply_family(g, single) == g);
  }
}

TEST_CASE("inversion commutes with induced subgraphs") {
  SplitMix64 rng(73);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 1 + static_cast<int>(rng.bounded(8));
    auto g = random_oriented(n, rng);
    auto f = random_family(g.vertices(), 1 + static_cast<int>(rng.bounded(3)), rng);
    auto s = random_subset(g.vertices(), rng);
    // restricting the family is optional: foreign vertices are ignored anyway
    CHECK(induced_subgraph(apply_family(g, f), s) ==
          apply_family(induced_subgraph(g, s), f));
  }
}

TEST_CASE("per-arc parity recomputation matches apply_family") {
  SplitMix64 rng(79);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 2 + static_cast<int>(rng.bounded(7));
    auto g = random_oriented(n, rng);
    auto f = random_family(g.vertices(), static_cast<int>(rng.bounded(5)), rng);
    auto h = apply_family(g, f);
    for (const auto& [u, v] : g.arcs()) {
      int count = 0;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (f.set_contains(j, u) && f.set_contains(j, v)) ++count;
      if (count % 2 == 0) {
        CHECK(h.has_arc(u, v));
      } else {
        CHECK(h.has_arc(v, u));
      }
    }
    CHECK(h.arc_count() == g.arc_count());
  }
}
