#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kinv/digraph.hpp"
#include "kinv/weight_set.hpp"

namespace kinv {

// Ordered tuple (Y_1,...,Y_l) of vertex subsets. Sets may contain vertices
// outside the graph a family is applied to; those never change any arc.
struct DecyclingFamily {
  std::vector<std::vector<Vertex>> sets;  // each sorted, unique

  DecyclingFamily() = default;
  explicit DecyclingFamily(std::vector<std::vector<Vertex>> s);

  std::size_t size() const { return sets.size(); }
  bool set_contains(std::size_t j, Vertex v) const;

  bool operator==(const DecyclingFamily& o) const { return sets == o.sets; }
};

// Fixed-width bit vector of family memberships for one vertex; bit j is the
// membership in the (j+1)-th set. Width is capped at 63 so vectors fit a word.
class CharVector {
 public:
  CharVector() = default;
  CharVector(std::uint64_t bits, int width);

  std::uint64_t bits() const { return bits_; }
  int width() const { return width_; }
  bool bit(int j) const { return (bits_ >> j & 1u) != 0; }
  int weight() const { return __builtin_popcountll(bits_); }
  // popcount of the last k coordinates
  int suffix_weight(int k) const;

  // GF(2) dot product; throws on width mismatch.
  int dot(const CharVector& o) const;

  std::string to_string() const;  // bit 0 printed first

  bool operator==(const CharVector& o) const {
    return bits_ == o.bits_ && width_ == o.width_;
  }

 private:
  std::uint64_t bits_ = 0;
  int width_ = 0;
};

bool is_bad_triple(const CharVector& a, const CharVector& b, const CharVector& c);

// Arc (u,v) survives iff (u,v) in d and {u,v} lies in an even number of sets,
// or (v,u) in d and that count is odd.
OrientedGraph apply_family(const OrientedGraph& d, const DecyclingFamily& f);

std::vector<CharVector> characteristic_vectors(const DecyclingFamily& f,
                                               const std::vector<Vertex>& order);

// Explicit weight constraints; vertices without an entry are unconstrained.
using WeightConstraints = std::unordered_map<Vertex, WeightSet>;

enum class RejectKind { TooLong, CyclicResult, WeightViolation };

struct VerifyResult {
  bool accepted = false;
  RejectKind kind = RejectKind::TooLong;  // meaningful when rejected
  Vertex offending_vertex = -1;           // for WeightViolation (original id)
  std::string reason;                     // machine-readable, e.g. "too-long"

  explicit operator bool() const { return accepted; }
};

// A family of at most k sets certifies budget k; shorter families are padded
// with empty sets, so weight checks (when `a` is given) always run over
// exactly k coordinates.
VerifyResult verify_certificate(const OrientedGraph& d, const DecyclingFamily& f,
                                int k,
                                const std::optional<WeightConstraints>& a = std::nullopt);

}  // namespace kinv
