#include "kinv/tournament.hpp"

#include <algorithm>
#include <stdexcept>

#include "kinv/oracle.hpp"

namespace kinv {

int VectorTable::intern(std::uint64_t bits) {
  auto [it, fresh] = ids_.try_emplace(bits, static_cast<int>(vecs_.size()));
  if (fresh) {
    if (vecs_.size() >= (std::size_t{1} << 20))
      throw CapExceeded("vector table overflow");
    vecs_.push_back(bits);
  }
  return it->second;
}

int VectorTable::find(std::uint64_t bits) const {
  auto it = ids_.find(bits);
  return it == ids_.end() ? -1 : it->second;
}

std::uint64_t TripleSet::pack(int a, int b, int c) {
  return (static_cast<std::uint64_t>(a) << 40) | (static_cast<std::uint64_t>(b) << 20) |
         static_cast<std::uint64_t>(c);
}

void TripleSet::unpack(std::uint64_t t, int& a, int& b, int& c) {
  a = static_cast<int>(t >> 40 & 0xfffff);
  b = static_cast<int>(t >> 20 & 0xfffff);
  c = static_cast<int>(t & 0xfffff);
}

TripleSet TripleSet::of(std::vector<std::uint64_t> triples) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  TripleSet s;
  s.triples_ = std::move(triples);
  return s;
}

bool TripleSet::contains(std::uint64_t t) const {
  return std::binary_search(triples_.begin(), triples_.end(), t);
}

std::uint64_t TripleSet::canonical_hash() const {
  // FNV-1a over the sorted triple words
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t t : triples_) {
    h ^= t;
    h *= 1099511628211ull;
  }
  return h;
}

TripleSet transition(const TripleSet& b, const VectorTable& table, const CharVector& x) {
  if (x.width() != table.width())
    throw std::invalid_argument("vector width mismatch");
  const int xid = table.find(x.bits());
  if (xid < 0) throw std::invalid_argument("vector not registered");
  std::vector<std::uint64_t> out(b.triples());
  out.reserve(b.size() * 4);
  for (std::uint64_t t : b.triples()) {
    int v1, v2, v3;
    TripleSet::unpack(t, v1, v2, v3);
    out.push_back(TripleSet::pack(v1, v2, xid));
    out.push_back(TripleSet::pack(v1, v3, xid));
    out.push_back(TripleSet::pack(v2, v3, xid));
  }
  return TripleSet::of(std::move(out));
}

bool has_bad_triple(const TripleSet& b, const VectorTable& table) {
  for (std::uint64_t t : b.triples()) {
    int a1, a2, a3;
    TripleSet::unpack(t, a1, a2, a3);
    if (is_bad_triple(table.vec(a1), table.vec(a2), table.vec(a3))) return true;
  }
  return false;
}

namespace {

int parity_dot(std::uint64_t a, std::uint64_t b) {
  return __builtin_popcountll(a & b) & 1;
}

bool bad_bits(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  const int ab = parity_dot(a, b);
  return ab == parity_dot(b, c) && ab != parity_dot(a, c);
}

void validate_instance(const CwkitInstance& inst) {
  if (inst.k < 0) throw std::invalid_argument("cwkit: negative k");
  if (!classify(inst.t0).is_tournament)
    throw std::invalid_argument("cwkit: input is not a tournament");
  if (inst.weights.size() != static_cast<std::size_t>(inst.t0.order()))
    throw std::invalid_argument("cwkit: one weight set per vertex required");
  const int s = static_cast<int>(inst.x.size());
  if (s + inst.k > 63) throw CapExceeded("cwkit: s+k exceeds 63-bit vectors");
  if (!is_acyclic(apply_family(inst.t0, inst.x)).is_dag())
    throw std::invalid_argument("cwkit: x is not a decycling family of t0");
}

// Entry of one DP level with its provenance for certificate walks.
struct LevelEntry {
  TripleSet set;
  int pred = -1;   // index into the previous level (t >= 4)
  int vec_id = -1; // vector id assigned to position t (t >= 4)
  int a = -1, b = -1, c = -1;  // the originating singleton (t == 3)
};

}  // namespace

std::vector<CharVector> build_candidates(Vertex v, const CwkitInstance& inst) {
  const int s = static_cast<int>(inst.x.size());
  const int k = inst.k;
  const int width = s + k;
  std::uint64_t prefix = 0;
  for (int j = 0; j < s; ++j)
    if (inst.x.set_contains(static_cast<std::size_t>(j), v))
      prefix |= std::uint64_t{1} << j;
  const WeightSet& allowed =
      inst.weights[static_cast<std::size_t>(inst.t0.local_index(v))];
  std::vector<CharVector> out;
  for (std::uint64_t suffix = 0; suffix < (std::uint64_t{1} << k); ++suffix) {
    if (!allowed.allows(__builtin_popcountll(suffix))) continue;
    out.emplace_back(prefix | (suffix << s), width);
  }
  return out;
}

CwkitResult cwkit(const CwkitInstance& inst, const CwkitOptions& opt) {
  validate_instance(inst);
  CwkitResult res;
  const int n = inst.t0.order();
  const int s = static_cast<int>(inst.x.size());
  const int k = inst.k;

  for (const auto& w : inst.weights)
    if (w.is_empty()) return res;

  // topological re-sort of the vertices along t = t0 (+) x
  const OrientedGraph t = apply_family(inst.t0, inst.x);
  const std::vector<Vertex> order = *is_acyclic(t).order;

  std::vector<std::vector<CharVector>> j(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    j[static_cast<std::size_t>(i)] =
        build_candidates(order[static_cast<std::size_t>(i)], inst);

  auto family_from_vectors = [&](const std::vector<std::uint64_t>& vecs) {
    std::vector<std::vector<Vertex>> sets(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < k; ++jj)
        if (vecs[static_cast<std::size_t>(i)] >> (s + jj) & 1u)
          sets[static_cast<std::size_t>(jj)].push_back(order[static_cast<std::size_t>(i)]);
    return DecyclingFamily(std::move(sets));
  };

  if (n <= 2) {
    res.yes = true;
    if (opt.want_certificate) {
      std::vector<std::uint64_t> vecs;
      for (int i = 0; i < n; ++i)
        vecs.push_back(j[static_cast<std::size_t>(i)].front().bits());
      res.family = family_from_vectors(vecs);
    }
    return res;
  }

  VectorTable table(s + k);

  // level t = 3: singletons over J_1 x J_2 x J_3, bad ones pruned
  std::vector<LevelEntry> level;
  std::unordered_map<std::uint64_t, std::vector<int>> dedup;
  auto push_entry = [&](std::vector<LevelEntry>& lv, LevelEntry&& e) {
    const std::uint64_t h = e.set.canonical_hash();
    auto& bucket = dedup[h];
    for (int idx : bucket)
      if (lv[static_cast<std::size_t>(idx)].set == e.set) return;
    if (lv.size() >= opt.limits.triple_set_cap)
      throw CapExceeded("cwkit: triple-set cap exceeded at cap " +
                        std::to_string(opt.limits.triple_set_cap));
    bucket.push_back(static_cast<int>(lv.size()));
    lv.push_back(std::move(e));
  };

  for (const CharVector& a : j[0])
    for (const CharVector& b : j[1])
      for (const CharVector& c : j[2]) {
        if (bad_bits(a.bits(), b.bits(), c.bits())) continue;
        LevelEntry e;
        e.a = table.intern(a.bits());
        e.b = table.intern(b.bits());
        e.c = table.intern(c.bits());
        e.set = TripleSet::of({TripleSet::pack(e.a, e.b, e.c)});
        push_entry(level, std::move(e));
      }
  if (opt.stats)
    opt.stats->peak_triple_sets = std::max(opt.stats->peak_triple_sets, level.size());

  std::vector<std::vector<LevelEntry>> levels;
  levels.push_back(std::move(level));

  for (int pos = 4; pos <= n; ++pos) {
    const auto& prev = levels.back();
    std::vector<LevelEntry> next;
    dedup.clear();
    for (int pi = 0; pi < static_cast<int>(prev.size()); ++pi) {
      for (const CharVector& x : j[static_cast<std::size_t>(pos - 1)]) {
        const int xid = table.intern(x.bits());
        // new triples only; prev is bad-free, so checking them suffices
        std::vector<std::uint64_t> triples(prev[static_cast<std::size_t>(pi)].set.triples());
        bool pruned = false;
        const std::size_t old_count = triples.size();
        for (std::size_t ti = 0; ti < old_count; ++ti) {
          int v1, v2, v3;
          TripleSet::unpack(triples[ti], v1, v2, v3);
          const int fresh[3][2] = {{v1, v2}, {v1, v3}, {v2, v3}};
          for (const auto& f : fresh) {
            if (bad_bits(table.bits(f[0]), table.bits(f[1]), x.bits())) {
              pruned = true;
              break;
            }
            triples.push_back(TripleSet::pack(f[0], f[1], xid));
          }
          if (pruned) break;
        }
        if (pruned) continue;
        LevelEntry e;
        e.set = TripleSet::of(std::move(triples));
        e.pred = pi;
        e.vec_id = xid;
        push_entry(next, std::move(e));
      }
    }
    if (opt.stats)
      opt.stats->peak_triple_sets = std::max(opt.stats->peak_triple_sets, next.size());
    levels.push_back(std::move(next));
  }

  const auto& last = levels.back();
  if (last.empty()) return res;  // every surviving set was pruned away
  res.yes = true;

  if (opt.want_certificate) {
    // walk predecessor links from the first surviving set
    std::vector<std::uint64_t> vecs(static_cast<std::size_t>(n));
    int idx = 0;
    for (int pos = n; pos >= 4; --pos) {
      const auto& e = levels[static_cast<std::size_t>(pos - 3)][static_cast<std::size_t>(idx)];
      vecs[static_cast<std::size_t>(pos - 1)] = table.bits(e.vec_id);
      idx = e.pred;
    }
    const auto& e3 = levels[0][static_cast<std::size_t>(idx)];
    vecs[0] = table.bits(e3.a);
    vecs[1] = table.bits(e3.b);
    vecs[2] = table.bits(e3.c);
    res.family = family_from_vectors(vecs);
  }
  return res;
}

DecyclingFamily extend_family_by_two(const OrientedGraph& t, Vertex v,
                                     const DecyclingFamily& f) {
  if (!t.has_vertex(v)) throw std::invalid_argument("vertex not in tournament");
  std::vector<Vertex> rest;
  for (Vertex u : t.vertices())
    if (u != v) rest.push_back(u);
  {
    const OrientedGraph tm = induced_subgraph(t, rest);
    if (!is_acyclic(apply_family(tm, f)).is_dag())
      throw std::invalid_argument("family does not decycle t - v");
  }

  const OrientedGraph r = apply_family(t, f);
  const OrientedGraph rm = induced_subgraph(r, rest);
  const std::vector<Vertex> w = *is_acyclic(rm).order;
  const int m = static_cast<int>(w.size());

  // insertion position p: w_0..w_{p-1} before v, the rest after
  std::size_t best_size = static_cast<std::size_t>(m) + 1;
  std::vector<Vertex> best_s;
  for (int p = 0; p <= m; ++p) {
    std::vector<Vertex> dis;
    for (int i = 0; i < m; ++i) {
      const Vertex wi = w[static_cast<std::size_t>(i)];
      const bool wrong = i < p ? r.has_arc(v, wi) : r.has_arc(wi, v);
      if (wrong) dis.push_back(wi);
    }
    if (dis.size() < best_size) {
      best_size = dis.size();
      best_s = std::move(dis);
    }
  }

  std::vector<std::vector<Vertex>> sets = f.sets;
  std::vector<Vertex> with_v = best_s;
  with_v.push_back(v);
  sets.push_back(std::move(with_v));
  sets.push_back(std::move(best_s));
  DecyclingFamily out(std::move(sets));

  if (!is_acyclic(apply_family(t, out)).is_dag())
    throw std::logic_error("extend_family_by_two: result failed verification");
  return out;
}

std::optional<DecyclingFamily> kit(const OrientedGraph& t, int k, KitStrategy strategy,
                                   const CwkitOptions& opt) {
  if (!classify(t).is_tournament)
    throw std::invalid_argument("kit: input is not a tournament");
  if (strategy == KitStrategy::Brute)
    return brute_decide(t, k, std::nullopt, opt.limits);

  const int n = t.order();
  const auto& verts = t.vertices();
  DecyclingFamily f;
  for (int i = 2; i <= n; ++i) {
    const std::vector<Vertex> prefix(verts.begin(), verts.begin() + i);
    const OrientedGraph ti = induced_subgraph(t, prefix);
    const DecyclingFamily extended =
        extend_family_by_two(ti, verts[static_cast<std::size_t>(i - 1)], f);
    CwkitInstance inst;
    inst.t0 = ti;
    inst.k = k;
    inst.weights.assign(static_cast<std::size_t>(i), WeightSet::all_up_to(k));
    inst.x = extended;
    CwkitOptions copt = opt;
    copt.want_certificate = true;
    CwkitResult res = cwkit(inst, copt);
    if (!res.yes) return std::nullopt;
    f = *res.family;
  }
  return f;
}

WkitResult wkit(const OrientedGraph& t, int k, const std::vector<WeightSet>& a,
                const WkitOptions& opt) {
  WkitResult res;
  if (a.size() != static_cast<std::size_t>(t.order()))
    throw std::invalid_argument("wkit: one weight set per vertex required");
  for (const auto& w : a)
    if (w.is_empty()) return res;

  if (k == 0) {
    if (!is_acyclic(t).is_dag()) return res;
    for (const auto& w : a)
      if (!w.allows(0)) return res;
    res.yes = true;
    res.family = DecyclingFamily();
    return res;
  }

  CwkitOptions kopt;
  kopt.limits = opt.limits;
  kopt.stats = opt.stats;
  auto initial = kit(t, k, opt.kit_strategy, kopt);
  if (!initial) return res;  // no size-k family at all

  DecyclingFamily x = *initial;
  while (x.size() < static_cast<std::size_t>(k)) x.sets.emplace_back();

  CwkitInstance inst;
  inst.t0 = t;
  inst.k = k;
  inst.weights = a;
  inst.x = std::move(x);
  CwkitOptions copt;
  copt.limits = opt.limits;
  copt.stats = opt.stats;
  copt.want_certificate = opt.want_certificate;
  CwkitResult c = cwkit(inst, copt);
  res.yes = c.yes;
  res.family = std::move(c.family);
  return res;
}

}  // namespace kinv
