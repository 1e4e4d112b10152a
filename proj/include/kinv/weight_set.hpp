#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kinv {

// Subset of {0,...,k} of allowed characteristic-vector weights, as a bit mask.
class WeightSet {
 public:
  WeightSet() = default;

  static WeightSet empty() { return WeightSet(); }
  static WeightSet single(int w) {
    WeightSet s;
    s.allow(w);
    return s;
  }
  static WeightSet all_up_to(int k) {
    WeightSet s;
    if (k < 0 || k > 30) throw std::invalid_argument("weight bound out of range");
    s.mask_ = (std::uint32_t{1} << (k + 1)) - 1;
    return s;
  }

  void allow(int w) {
    if (w < 0 || w > 30) throw std::invalid_argument("weight out of range");
    mask_ |= std::uint32_t{1} << w;
  }
  bool allows(int w) const {
    return w >= 0 && w <= 30 && (mask_ >> w & 1u) != 0;
  }
  bool is_empty() const { return mask_ == 0; }
  std::uint32_t mask() const { return mask_; }

  std::vector<int> values() const {
    std::vector<int> out;
    for (int w = 0; w <= 30; ++w)
      if (allows(w)) out.push_back(w);
    return out;
  }

  bool operator==(const WeightSet& o) const { return mask_ == o.mask_; }

 private:
  std::uint32_t mask_ = 0;
};

}  // namespace kinv
