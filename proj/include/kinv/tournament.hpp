#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kinv/digraph.hpp"
#include "kinv/inversion.hpp"
#include "kinv/limits.hpp"
#include "kinv/weight_set.hpp"

namespace kinv {

// Registry of distinct characteristic vectors (all of one width); triple sets
// store small ids instead of raw vectors.
class VectorTable {
 public:
  explicit VectorTable(int width) : width_(width) {}

  int width() const { return width_; }
  int intern(std::uint64_t bits);
  int find(std::uint64_t bits) const;  // -1 when absent
  std::uint64_t bits(int id) const { return vecs_[static_cast<std::size_t>(id)]; }
  CharVector vec(int id) const { return CharVector(bits(id), width_); }
  std::size_t size() const { return vecs_.size(); }

 private:
  int width_;
  std::vector<std::uint64_t> vecs_;
  std::unordered_map<std::uint64_t, int> ids_;
};

// Set of ordered triples of interned vectors, kept canonically sorted.
// Triples pack three 20-bit vector ids into one word.
class TripleSet {
 public:
  static std::uint64_t pack(int a, int b, int c);
  static void unpack(std::uint64_t t, int& a, int& b, int& c);

  TripleSet() = default;
  static TripleSet of(std::vector<std::uint64_t> triples);  // sorts + dedups

  const std::vector<std::uint64_t>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool contains(std::uint64_t t) const;
  std::uint64_t canonical_hash() const;

  bool operator==(const TripleSet& o) const { return triples_ == o.triples_; }

 private:
  std::vector<std::uint64_t> triples_;
};

// Transition of the level DP: the union of b with all triples obtained by
// replacing one position of an existing triple with x (appended last).
TripleSet transition(const TripleSet& b, const VectorTable& table, const CharVector& x);

bool has_bad_triple(const TripleSet& b, const VectorTable& table);

struct CwkitInstance {
  OrientedGraph t0;                // a tournament
  int k = 0;
  std::vector<WeightSet> weights;  // parallel to t0.vertices()
  DecyclingFamily x;               // decycling family of t0, |x| = s
};

struct CwkitOptions {
  SolveLimits limits;
  SolveStats* stats = nullptr;
  bool want_certificate = true;
};

struct CwkitResult {
  bool yes = false;
  std::optional<DecyclingFamily> family;  // size k when yes and requested
};

// Candidate vectors for one vertex: prefix forced to the vertex's memberships
// across inst.x, suffix weight allowed by the vertex's weight set. Sorted
// ascending by bits.
std::vector<CharVector> build_candidates(Vertex v, const CwkitInstance& inst);

// Decides whether t0 has a decycling family of size exactly k meeting the
// weight constraints, via the level DP over triple sets of characteristic
// vectors taken in a topological order of t0 (+) x.
CwkitResult cwkit(const CwkitInstance& inst, const CwkitOptions& opt = {});

// Given f decycling t - v, appends two sets that also fix v's position: v is
// inserted at the place in the transitive order minimizing the disagreement
// set S, and the pair (S u {v}, S) flips exactly the v-incident arcs into
// agreement. The result is checked before returning.
DecyclingFamily extend_family_by_two(const OrientedGraph& t, Vertex v,
                                     const DecyclingFamily& f);

enum class KitStrategy { Compression, Brute };

// Plain k-inversion on tournaments; returns a family of size <= k if one
// exists. Compression grows the vertex prefix, re-compressing each extended
// family through cwkit with all weights allowed.
std::optional<DecyclingFamily> kit(const OrientedGraph& t, int k,
                                   KitStrategy strategy = KitStrategy::Compression,
                                   const CwkitOptions& opt = {});

struct WkitResult {
  bool yes = false;
  std::optional<DecyclingFamily> family;
};

struct WkitOptions {
  SolveLimits limits;
  SolveStats* stats = nullptr;
  bool want_certificate = true;
  KitStrategy kit_strategy = KitStrategy::Compression;
};

// Weight-restricted k-inversion on tournaments: a size-k family whose induced
// weight on every vertex lies in that vertex's allowed set.
WkitResult wkit(const OrientedGraph& t, int k, const std::vector<WeightSet>& a,
                const WkitOptions& opt = {});

}  // namespace kinv
