#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kinv/digraph.hpp"

namespace kinv {

// Fixed-layout bitmask encoding of table keys (P, S) over a bag.
//
// The bag is sorted ascending; b = |bag|. The ordered pair (i, j) of distinct
// bag-local indices occupies slot i*(b-1) + (j < i ? j : j-1), so slots run
// lexicographically by (i, j). A key packs the P mask in the low b*(b-1) bits
// followed by k fields of b bits, one per set of S (bit i of field j = bag
// vertex i lies in S_{j+1}).
class BagLayout {
 public:
  BagLayout(std::vector<Vertex> bag_sorted, int k);

  const std::vector<Vertex>& bag() const { return bag_; }
  int size() const { return static_cast<int>(bag_.size()); }
  int k() const { return k_; }
  int pair_slots() const { return size() * (size() - 1); }
  int key_bits() const { return pair_slots() + k_ * size(); }

  int slot(int i, int j) const { return i * (size() - 1) + (j < i ? j : j - 1); }
  std::pair<int, int> slot_pair(int slot) const;  // inverse of slot()

  int index_of(Vertex v) const;  // bag-local index; throws if absent
  bool contains(Vertex v) const;

  std::uint64_t encode_pairs(const std::vector<Arc>& p) const;
  std::vector<Arc> decode_pairs(std::uint64_t pmask) const;

  std::uint64_t encode_sets(const std::vector<std::vector<Vertex>>& s) const;
  std::vector<std::vector<Vertex>> decode_sets(std::uint64_t smask) const;

  std::uint64_t key(std::uint64_t pmask, std::uint64_t smask) const {
    return pmask | (smask << pair_slots());
  }
  std::uint64_t key_pmask(std::uint64_t key) const {
    return key & ((std::uint64_t{1} << pair_slots()) - 1);
  }
  std::uint64_t key_smask(std::uint64_t key) const { return key >> pair_slots(); }

  // Kahn's check on an arc mask over the bag.
  bool mask_is_dag(std::uint64_t arcs) const;
  // Reachability (paths of length >= 1) of an arc mask, as a pair mask;
  // equals the transitive closure of the relation.
  std::uint64_t mask_closure(std::uint64_t arcs) const;

 private:
  std::vector<Vertex> bag_;
  int k_;
};

}  // namespace kinv
