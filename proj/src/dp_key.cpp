#include "kinv/dp_key.hpp"

#include <algorithm>

namespace kinv {

BagLayout::BagLayout(std::vector<Vertex> bag_sorted, int k)
    : bag_(std::move(bag_sorted)), k_(k) {
  if (k < 0) throw std::invalid_argument("negative k");
  if (!std::is_sorted(bag_.begin(), bag_.end()) ||
      std::adjacent_find(bag_.begin(), bag_.end()) != bag_.end())
    throw std::invalid_argument("bag must be sorted and duplicate-free");
  if (key_bits() > 62) throw std::invalid_argument("bag key does not fit 62 bits");
}

std::pair<int, int> BagLayout::slot_pair(int slot) const {
  const int i = slot / (size() - 1);
  int j = slot % (size() - 1);
  if (j >= i) ++j;
  return {i, j};
}

int BagLayout::index_of(Vertex v) const {
  auto it = std::lower_bound(bag_.begin(), bag_.end(), v);
  if (it == bag_.end() || *it != v) throw std::out_of_range("vertex not in bag");
  return static_cast<int>(it - bag_.begin());
}

bool BagLayout::contains(Vertex v) const {
  return std::binary_search(bag_.begin(), bag_.end(), v);
}

std::uint64_t BagLayout::encode_pairs(const std::vector<Arc>& p) const {
  std::uint64_t mask = 0;
  for (const auto& [u, v] : p)
    mask |= std::uint64_t{1} << slot(index_of(u), index_of(v));
  return mask;
}

std::vector<Arc> BagLayout::decode_pairs(std::uint64_t pmask) const {
  std::vector<Arc> out;
  for (int s = 0; s < pair_slots(); ++s)
    if (pmask >> s & 1u) {
      auto [i, j] = slot_pair(s);
      out.emplace_back(bag_[static_cast<std::size_t>(i)], bag_[static_cast<std::size_t>(j)]);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t BagLayout::encode_sets(const std::vector<std::vector<Vertex>>& s) const {
  if (static_cast<int>(s.size()) != k_)
    throw std::invalid_argument("tuple length differs from k");
  std::uint64_t mask = 0;
  for (int j = 0; j < k_; ++j)
    for (Vertex v : s[static_cast<std::size_t>(j)])
      mask |= std::uint64_t{1} << (j * size() + index_of(v));
  return mask;
}

std::vector<std::vector<Vertex>> BagLayout::decode_sets(std::uint64_t smask) const {
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(k_));
  for (int j = 0; j < k_; ++j)
    for (int i = 0; i < size(); ++i)
      if (smask >> (j * size() + i) & 1u)
        out[static_cast<std::size_t>(j)].push_back(bag_[static_cast<std::size_t>(i)]);
  return out;
}

bool BagLayout::mask_is_dag(std::uint64_t arcs) const {
  const int b = size();
  int indeg[64] = {0};
  for (int s = 0; s < pair_slots(); ++s)
    if (arcs >> s & 1u) ++indeg[slot_pair(s).second];
  int removed = 0;
  bool active[64];
  for (int i = 0; i < b; ++i) active[i] = true;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < b; ++i) {
      if (!active[i] || indeg[i] != 0) continue;
      active[i] = false;
      ++removed;
      progress = true;
      for (int j = 0; j < b; ++j)
        if (j != i && (arcs >> slot(i, j) & 1u)) --indeg[j];
    }
  }
  return removed == b;
}

std::uint64_t BagLayout::mask_closure(std::uint64_t arcs) const {
  const int b = size();
  // Floyd-Warshall over bag-local indices; (i,i) pairs stay unrepresented.
  std::uint64_t cl = arcs;
  for (int m = 0; m < b; ++m)
    for (int i = 0; i < b; ++i) {
      if (i == m || !(cl >> slot(i, m) & 1u)) continue;
      for (int j = 0; j < b; ++j)
        if (j != m && j != i && (cl >> slot(m, j) & 1u))
          cl |= std::uint64_t{1} << slot(i, j);
    }
  return cl;
}

}  // namespace kinv
