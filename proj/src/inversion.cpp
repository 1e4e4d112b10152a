#include "kinv/inversion.hpp"

#include <algorithm>
#include <stdexcept>

namespace kinv {

DecyclingFamily::DecyclingFamily(std::vector<std::vector<Vertex>> s)
    : sets(std::move(s)) {
  for (auto& y : sets) {
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
  }
}

bool DecyclingFamily::set_contains(std::size_t j, Vertex v) const {
  const auto& y = sets[j];
  return std::binary_search(y.begin(), y.end(), v);
}

CharVector::CharVector(std::uint64_t bits, int width) : bits_(bits), width_(width) {
  if (width < 0 || width > 63) throw std::invalid_argument("vector width out of range");
  if (width < 64 && (bits >> width) != 0)
    throw std::invalid_argument("bits beyond vector width");
}

int CharVector::suffix_weight(int k) const {
  if (k < 0 || k > width_) throw std::invalid_argument("suffix longer than vector");
  return __builtin_popcountll(bits_ >> (width_ - k));
}

int CharVector::dot(const CharVector& o) const {
  if (width_ != o.width_) throw std::invalid_argument("vector width mismatch");
  return __builtin_popcountll(bits_ & o.bits_) & 1;
}

std::string CharVector::to_string() const {
  std::string s(static_cast<std::size_t>(width_), '0');
  for (int j = 0; j < width_; ++j)
    if (bit(j)) s[static_cast<std::size_t>(j)] = '1';
  return s;
}

bool is_bad_triple(const CharVector& a, const CharVector& b, const CharVector& c) {
  const int ab = a.dot(b), bc = b.dot(c), ac = a.dot(c);
  return ab == bc && ab != ac;
}

OrientedGraph apply_family(const OrientedGraph& d, const DecyclingFamily& f) {
  const int n = d.order();
  const std::size_t l = f.size();
  const std::size_t words = (l + 63) / 64;

  // per-vertex membership bits over family positions
  std::vector<std::uint64_t> mem(static_cast<std::size_t>(n) * words, 0);
  for (std::size_t j = 0; j < l; ++j)
    for (Vertex v : f.sets[j])
      if (d.has_vertex(v))
        mem[static_cast<std::size_t>(d.local_index(v)) * words + j / 64] |=
            std::uint64_t{1} << (j % 64);

  std::vector<Arc> arcs;
  arcs.reserve(d.arc_count());
  for (const auto& [u, v] : d.arcs()) {
    const std::size_t iu = static_cast<std::size_t>(d.local_index(u)) * words;
    const std::size_t iv = static_cast<std::size_t>(d.local_index(v)) * words;
    int parity = 0;
    for (std::size_t w = 0; w < words; ++w)
      parity ^= __builtin_popcountll(mem[iu + w] & mem[iv + w]) & 1;
    if (parity == 0)
      arcs.emplace_back(u, v);
    else
      arcs.emplace_back(v, u);
  }
  return OrientedGraph::from_arcs(d.vertices(), arcs);
}

std::vector<CharVector> characteristic_vectors(const DecyclingFamily& f,
                                               const std::vector<Vertex>& order) {
  const int width = static_cast<int>(f.size());
  if (width > 63) throw std::invalid_argument("family too long for one-word vectors");
  std::vector<CharVector> out;
  out.reserve(order.size());
  for (Vertex v : order) {
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f.set_contains(j, v)) bits |= std::uint64_t{1} << j;
    out.emplace_back(bits, width);
  }
  return out;
}

VerifyResult verify_certificate(const OrientedGraph& d, const DecyclingFamily& f,
                                int k, const std::optional<WeightConstraints>& a) {
  VerifyResult res;
  if (k < 0) throw std::invalid_argument("negative budget");
  if (f.size() > static_cast<std::size_t>(k)) {
    res.kind = RejectKind::TooLong;
    res.reason = "too-long";
    return res;
  }
  if (a) {
    // weights over exactly k coordinates; padding adds none
    for (Vertex v : d.vertices()) {
      auto it = a->find(v);
      if (it == a->end()) continue;
      int wt = 0;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (f.set_contains(j, v)) ++wt;
      if (!it->second.allows(wt)) {
        res.kind = RejectKind::WeightViolation;
        res.offending_vertex = v;
        res.reason = "weight-violation(" + std::to_string(v + 1) + ")";
        return res;
      }
    }
  }
  if (!is_acyclic(apply_family(d, f)).is_dag()) {
    res.kind = RejectKind::CyclicResult;
    res.reason = "cyclic-result";
    return res;
  }
  res.accepted = true;
  return res;
}

}  // namespace kinv
