#include "doctest.h"

#include <algorithm>
#include <set>

#include "kinv/oracle.hpp"
#include "kinv/tournament.hpp"
#include "test_support.hpp"

using namespace kinv;
using namespace kinv::test;

namespace {

CharVector cv(const std::string& s) {
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j] == '1') bits |= std::uint64_t{1} << j;
  return CharVector(bits, static_cast<int>(s.size()));
}

// Formula-level recomputation of the transition, independent of transition().
std::vector<std::uint64_t> transition_oracle(const TripleSet& b, int xid) {
  std::vector<std::uint64_t> out(b.triples());
  for (std::uint64_t t : b.triples()) {
    int v1, v2, v3;
    TripleSet::unpack(t, v1, v2, v3);
    out.push_back(TripleSet::pack(v1, v2, xid));
    out.push_back(TripleSet::pack(v1, v3, xid));
    out.push_back(TripleSet::pack(v2, v3, xid));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// B(u) straight from the definition: all position-ordered triples.
TripleSet b_of(const std::vector<CharVector>& u, VectorTable& table) {
  std::vector<std::uint64_t> triples;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = a + 1; b < u.size(); ++b)
      for (std::size_t c = b + 1; c < u.size(); ++c)
        triples.push_back(TripleSet::pack(table.intern(u[a].bits()),
                                          table.intern(u[b].bits()),
                                          table.intern(u[c].bits())));
  return TripleSet::of(std::move(triples));
}

std::vector<WeightSet> all_weights(int n, int k) {
  return std::vector<WeightSet>(static_cast<std::size_t>(n), WeightSet::all_up_to(k));
}

}  // namespace

TEST_CASE("is_bad_triple parity cases") {
  CHECK(is_bad_triple(cv("10"), cv("11"), cv("01")));
  CHECK(!is_bad_triple(cv("00"), cv("00"), cv("00")));
  CHECK(!is_bad_triple(cv("11"), cv("11"), cv("00")));
  CHECK_THROWS_AS(is_bad_triple(cv("1"), cv("11"), cv("00")), std::invalid_argument);
}

TEST_CASE("build_candidates forces the prefix and filters suffix weights") {
  {
    CwkitInstance inst;
    inst.t0 = graph_of(1, {});
    inst.k = 1;
    inst.weights = {WeightSet::all_up_to(1)};
    auto j = build_candidates(0, inst);
    REQUIRE(j.size() == 2);
    CHECK(j[0].to_string() == "0");
    CHECK(j[1].to_string() == "1");
  }
  {
    CwkitInstance inst;
    inst.t0 = graph_of(1, {});
    inst.k = 1;
    inst.weights = {WeightSet::single(0)};
    inst.x = family_of({{1}});
    auto j = build_candidates(0, inst);
    REQUIRE(j.size() == 1);
    CHECK(j[0].to_string() == "10");
  }
  {
    CwkitInstance inst;
    inst.t0 = graph_of(1, {});
    inst.k = 1;
    inst.weights = {WeightSet::empty()};
    CHECK(build_candidates(0, inst).empty());
  }
}

TEST_CASE("transition matches the three-new-triples rule") {
  VectorTable table(2);
  const int a = table.intern(cv("10").bits());
  const int b = table.intern(cv("01").bits());
  const int c = table.intern(cv("11").bits());
  const int x = table.intern(cv("00").bits());

  auto base = TripleSet::of({TripleSet::pack(a, b, c)});
  auto next = transition(base, table, cv("00"));
  std::set<std::uint64_t> expect{TripleSet::pack(a, b, c), TripleSet::pack(a, b, x),
                                 TripleSet::pack(a, c, x), TripleSet::pack(b, c, x)};
  CHECK(std::set<std::uint64_t>(next.triples().begin(), next.triples().end()) == expect);

  CHECK(transition(TripleSet(), table, cv("00")).size() == 0);

  // double application equals a direct recomputation on the first result
  auto twice = transition(next, table, cv("00"));
  CHECK(twice.triples() == transition_oracle(next, x));
}

TEST_CASE("transition is a superset with at most 4x growth; badness persists") {
  SplitMix64 rng(131);
  for (int rep = 0; rep < 200; ++rep) {
    const int width = 1 + static_cast<int>(rng.bounded(4));
    VectorTable table(width);
    std::vector<CharVector> u;
    const int t = 3 + static_cast<int>(rng.bounded(3));
    for (int i = 0; i < t; ++i)
      u.push_back(CharVector(rng.bounded(std::uint64_t{1} << width), width));
    auto b = b_of(u, table);
    CharVector x(rng.bounded(std::uint64_t{1} << width), width);
    table.intern(x.bits());
    auto s = transition(b, table, x);
    CHECK(s.size() <= 4 * b.size());
    for (std::uint64_t tr : b.triples()) CHECK(s.contains(tr));
    if (has_bad_triple(b, table)) CHECK(has_bad_triple(s, table));
  }
}

TEST_CASE("appending a position commutes with the transition") {
  SplitMix64 rng(137);
  for (int rep = 0; rep < 300; ++rep) {
    const int width = 1 + static_cast<int>(rng.bounded(4));
    VectorTable table(width);
    const int t = 4 + static_cast<int>(rng.bounded(3));
    std::vector<CharVector> u;
    for (int i = 0; i < t; ++i)
      u.push_back(CharVector(rng.bounded(std::uint64_t{1} << width), width));
    std::vector<CharVector> prefix(u.begin(), u.end() - 1);
    auto whole = b_of(u, table);
    auto part = b_of(prefix, table);
    table.intern(u.back().bits());
    CHECK(whole == transition(part, table, u.back()));
  }
}

TEST_CASE("cwkit on the named cases") {
  auto tri = triangle();
  {
    CwkitInstance inst{tri, 1, all_weights(3, 1), family_of({{1, 2}})};
    auto res = cwkit(inst);
    CHECK(res.yes);
    REQUIRE(res.family);
    CHECK(res.family->size() == 1);
    CHECK(verify_certificate(tri, *res.family, 1).accepted);
  }
  {
    CwkitInstance inst{tri, 1, std::vector<WeightSet>(3, WeightSet::single(1)),
                       family_of({{1, 2}})};
    CHECK(!cwkit(inst).yes);
  }
  {
    auto two = graph_of(2, {{2, 1}});
    CwkitInstance inst{two, 1, all_weights(2, 1), DecyclingFamily()};
    auto res = cwkit(inst);
    CHECK(res.yes);
    REQUIRE(res.family);
    CHECK(verify_certificate(two, *res.family, 1).accepted);
  }
}

TEST_CASE("cwkit agrees with the brute oracle under weight constraints") {
  SplitMix64 rng(139);
  int yes_seen = 0;
  for (int rep = 0; rep < 120; ++rep) {
    const int n = 3 + static_cast<int>(rng.bounded(4));
    const int k = 1 + static_cast<int>(rng.bounded(2));
    auto t = gen_tournament(n, rng.next());
    auto x = brute_decide(t, 3);
    if (!x) continue;
    std::vector<WeightSet> a;
    WeightConstraints wc;
    for (int i = 0; i < n; ++i) {
      WeightSet ws;
      for (int w = 0; w <= k; ++w)
        if (rng.coin()) ws.allow(w);
      if (ws.is_empty())
        ws.allow(static_cast<int>(rng.bounded(static_cast<std::uint64_t>(k + 1))));
      a.push_back(ws);
      wc[i] = ws;
    }
    CwkitInstance inst{t, k, a, *x};
    auto res = cwkit(inst);
    auto brute = brute_decide(t, k, wc);
    CHECK(res.yes == brute.has_value());
    if (res.yes) {
      ++yes_seen;
      CHECK(verify_certificate(t, *res.family, k, wc).accepted);
    }
  }
  CHECK(yes_seen > 5);
}

TEST_CASE("cwkit validates its preconditions") {
  CwkitInstance bad{graph_of(3, {{1, 2}}), 1, all_weights(3, 1), DecyclingFamily()};
  CHECK_THROWS_AS(cwkit(bad), std::invalid_argument);

  CwkitInstance notdec{triangle(), 1, all_weights(3, 1), DecyclingFamily()};
  CHECK_THROWS_AS(cwkit(notdec), std::invalid_argument);
}

TEST_CASE("transitivity after inversion iff no bad triple") {
  SplitMix64 rng(149);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 3 + static_cast<int>(rng.bounded(5));
    std::vector<Vertex> order;
    auto t = random_transitive(n, rng, &order);
    auto w = random_family(t.vertices(), 1 + static_cast<int>(rng.bounded(4)), rng);
    auto vecs = characteristic_vectors(w, order);
    bool bad = false;
    for (std::size_t a = 0; a < vecs.size() && !bad; ++a)
      for (std::size_t b = a + 1; b < vecs.size() && !bad; ++b)
        for (std::size_t c = b + 1; c < vecs.size() && !bad; ++c)
          bad = is_bad_triple(vecs[a], vecs[b], vecs[c]);
    CHECK(is_acyclic(apply_family(t, w)).is_dag() == !bad);
  }
}

TEST_CASE("extend_family_by_two on the named cases") {
  auto tri = triangle();
  {
    auto out = extend_family_by_two(tri, 2, DecyclingFamily());
    CHECK(out.size() == 2);
    CHECK(is_acyclic(apply_family(tri, out)).is_dag());
  }
  {
    // v already consistent: extending a transitive tournament adds a no-op pair
    auto trans = graph_of(3, {{1, 2}, {1, 3}, {2, 3}});
    auto out = extend_family_by_two(trans, 2, DecyclingFamily());
    CHECK(out.sets[0] == std::vector<Vertex>{2});
    CHECK(out.sets[1].empty());
    CHECK(apply_family(trans, out) == trans);
  }
  {
    // empty family does not decycle the triangle left after removing vertex 4
    auto t4 = graph_of(4, {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}});
    CHECK_THROWS_AS(extend_family_by_two(t4, 3, DecyclingFamily()),
                    std::invalid_argument);
  }
}

TEST_CASE("extend_family_by_two always verifies on random inputs") {
  SplitMix64 rng(151);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = 2 + static_cast<int>(rng.bounded(6));
    auto t = gen_tournament(n, rng.next());
    const Vertex v = static_cast<Vertex>(rng.bounded(static_cast<std::uint64_t>(n)));
    std::vector<Vertex> rest;
    for (Vertex u : t.vertices())
      if (u != v) rest.push_back(u);
    auto tm = induced_subgraph(t, rest);
    auto k = brute_inversion_number(tm, 3);
    REQUIRE(k.has_value());
    auto f = brute_decide(tm, *k);
    auto out = extend_family_by_two(t, v, *f);
    CHECK(out.size() == f->size() + 2);
    CHECK(verify_certificate(t, out, static_cast<int>(out.size())).accepted);
  }
}

TEST_CASE("kit on the named cases, both strategies") {
  for (auto strat : {KitStrategy::Compression, KitStrategy::Brute}) {
    auto f = kit(triangle(), 1, strat);
    REQUIRE(f.has_value());
    CHECK(f->size() <= 1);
    CHECK(verify_certificate(triangle(), *f, 1).accepted);

    auto trans = graph_of(3, {{1, 2}, {1, 3}, {2, 3}});
    auto g = kit(trans, 0, strat);
    REQUIRE(g.has_value());
    CHECK(verify_certificate(trans, *g, 0).accepted);

    CHECK(!kit(triangle(), 0, strat).has_value());
  }
}

TEST_CASE("kit strategies agree on random tournaments") {
  SplitMix64 rng(157);
  for (int rep = 0; rep < 80; ++rep) {
    const int n = 3 + static_cast<int>(rng.bounded(4));
    const int k = 1 + static_cast<int>(rng.bounded(2));
    auto t = gen_tournament(n, rng.next());
    auto a = kit(t, k, KitStrategy::Compression);
    auto b = kit(t, k, KitStrategy::Brute);
    CHECK(a.has_value() == b.has_value());
    if (a) CHECK(verify_certificate(t, *a, k).accepted);
  }
}

TEST_CASE("wkit on the named cases") {
  auto tri = triangle();
  {
    auto res = wkit(tri, 1, all_weights(3, 1));
    CHECK(res.yes);
    CHECK(verify_certificate(tri, *res.family, 1).accepted);
  }
  {
    auto res = wkit(tri, 1, std::vector<WeightSet>(3, WeightSet::single(1)));
    CHECK(!res.yes);
  }
  {
    auto res = wkit(graph_of(1, {}), 1, {WeightSet::single(0)});
    CHECK(res.yes);
    REQUIRE(res.family);
    CHECK(res.family->size() == 1);
    CHECK(res.family->sets[0].empty());
  }
}

namespace {

OrientedGraph tournament_from_bits(int n, std::uint64_t bits) {
  std::vector<Vertex> verts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) verts[static_cast<std::size_t>(i)] = i;
  std::vector<Arc> arcs;
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++p) {
      if (bits >> p & 1u)
        arcs.emplace_back(j, i);
      else
        arcs.emplace_back(i, j);
    }
  return OrientedGraph::from_arcs(std::move(verts), arcs);
}

void check_wkit_against_brute(const OrientedGraph& t, int k, SplitMix64& rng) {
  const int n = t.order();
  std::vector<WeightSet> a;
  WeightConstraints wc;
  for (int i = 0; i < n; ++i) {
    WeightSet ws;
    for (int w = 0; w <= k; ++w)
      if (rng.coin()) ws.allow(w);
    a.push_back(ws);
    wc[i] = ws;
  }
  bool empty_a = false;
  for (const auto& ws : a) empty_a = empty_a || ws.is_empty();
  const bool brute = empty_a ? false : brute_decide(t, k, wc).has_value();
  auto res = wkit(t, k, a);
  CHECK(res.yes == brute);
  if (res.yes) CHECK(verify_certificate(t, *res.family, k, wc).accepted);
}

}  // namespace

TEST_CASE("wkit equals the brute oracle: exhaustive n <= 4, sampled n = 5..7") {
  SplitMix64 rng(163);
  for (int n = 3; n <= 4; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits)
      for (int k = 1; k <= 2; ++k)
        check_wkit_against_brute(tournament_from_bits(n, bits), k, rng);
  }
  for (int rep = 0; rep < 500; ++rep)
    check_wkit_against_brute(
        tournament_from_bits(5, rng.bounded(std::uint64_t{1} << 10)), 1 + rep % 2, rng);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 6 + rep % 2;
    check_wkit_against_brute(gen_tournament(n, rng.next()), 1 + rep % 2, rng);
  }
}
