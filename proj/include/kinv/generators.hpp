#pragma once

#include <cstdint>
#include <vector>

#include "kinv/digraph.hpp"

namespace kinv {

// SplitMix64 (Steele, Lea, Flood; public domain reference constants). All
// generated corpora are bit-exact functions of (parameters, seed):
//   next(): state += 0x9e3779b97f4a7c15; z = state;
//           z = (z ^ z >> 30) * 0xbf58476d1ce4e5b9;
//           z = (z ^ z >> 27) * 0x94d049bb133111eb;  return z ^ z >> 31;
//   coin() = next() >> 63,  bounded(n) = next() % n.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int coin() { return static_cast<int>(next() >> 63); }
  std::uint64_t bounded(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// One fair coin per unordered pair, pairs in order (0,1),(0,2),...,(1,2),...;
// coin 0 keeps i -> j for i < j.
OrientedGraph gen_tournament(int n, std::uint64_t seed);

// Random block digraph: cliques of size 2..max_block_size, each after the
// first attached at a uniformly random existing vertex, each oriented by
// per-pair coins.
OrientedGraph gen_block_digraph(int num_blocks, int max_block_size, std::uint64_t seed);

struct KtreeInstance {
  OrientedGraph graph;
  // Reverse construction order; eliminating along it certifies width <= the
  // requested width.
  std::vector<Vertex> elimination_order;
};

// Random k-tree of the given width, each edge then deleted with probability
// 1/4 and the survivors oriented by coins.
KtreeInstance gen_partial_ktree_digraph(int n, int width, std::uint64_t seed);

}  // namespace kinv
