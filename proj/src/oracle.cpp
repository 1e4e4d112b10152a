#include "kinv/oracle.hpp"

#include <algorithm>
#include <set>

namespace kinv {

namespace {

// Scratch for checking one candidate family over local indices without
// rebuilding graph objects. Only used with n <= 62 (enumeration cap).
struct LocalInstance {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;  // local index pairs
  std::vector<int> weight_mask;           // -1 = unconstrained, else WeightSet mask

  explicit LocalInstance(const OrientedGraph& d,
                         const std::optional<WeightConstraints>& a) {
    n = d.order();
    for (const auto& [u, v] : d.arcs())
      arcs.emplace_back(d.local_index(u), d.local_index(v));
    weight_mask.assign(static_cast<std::size_t>(n), -1);
    if (a) {
      for (const auto& [v, ws] : *a)
        if (d.has_vertex(v))
          weight_mask[static_cast<std::size_t>(d.local_index(v))] =
              static_cast<int>(ws.mask());
    }
  }

  // masks[j] = membership bitmask of set j over local indices
  bool accepts(const std::vector<std::uint64_t>& masks) const {
    for (int v = 0; v < n; ++v) {
      const int wm = weight_mask[static_cast<std::size_t>(v)];
      if (wm < 0) continue;
      int wt = 0;
      for (std::uint64_t m : masks) wt += static_cast<int>(m >> v & 1u);
      if (!(wm >> wt & 1)) return false;
    }
    return is_dag_after(masks);
  }

  bool is_dag_after(const std::vector<std::uint64_t>& masks) const {
    static thread_local std::vector<int> cnt, start, flat, indeg, queue;
    cnt.assign(static_cast<std::size_t>(n), 0);
    indeg.assign(static_cast<std::size_t>(n), 0);
    static thread_local std::vector<std::pair<int, int>> flipped;
    flipped.clear();
    for (auto [u, v] : arcs) {
      int parity = 0;
      for (std::uint64_t m : masks)
        parity ^= static_cast<int>((m >> u) & (m >> v) & 1u);
      if (parity) std::swap(u, v);
      ++cnt[static_cast<std::size_t>(u)];
      ++indeg[static_cast<std::size_t>(v)];
      flipped.emplace_back(u, v);
    }
    start.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v)
      start[static_cast<std::size_t>(v) + 1] =
          start[static_cast<std::size_t>(v)] + cnt[static_cast<std::size_t>(v)];
    flat.assign(flipped.size(), 0);
    for (const auto& [u, v] : flipped)
      flat[static_cast<std::size_t>(
          start[static_cast<std::size_t>(u)] + --cnt[static_cast<std::size_t>(u)])] = v;
    queue.clear();
    for (int v = 0; v < n; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::size_t qh = 0;
    int removed = 0;
    while (qh < queue.size()) {
      const int u = queue[qh++];
      ++removed;
      for (int i = start[static_cast<std::size_t>(u)];
           i < start[static_cast<std::size_t>(u) + 1]; ++i) {
        const int w = flat[static_cast<std::size_t>(i)];
        if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
      }
    }
    return removed == n;
  }
};

DecyclingFamily family_from_masks(const OrientedGraph& d,
                                  const std::vector<std::uint64_t>& masks) {
  std::vector<std::vector<Vertex>> sets;
  sets.reserve(masks.size());
  for (std::uint64_t m : masks) {
    std::vector<Vertex> y;
    for (int i = 0; i < d.order(); ++i)
      if (m >> i & 1u) y.push_back(d.vertex_at(i));
    sets.push_back(std::move(y));
  }
  return DecyclingFamily(std::move(sets));
}

}  // namespace

std::optional<DecyclingFamily> brute_decide(const OrientedGraph& d, int k,
                                            const std::optional<WeightConstraints>& a,
                                            const SolveLimits& limits) {
  if (k < 0) throw std::invalid_argument("negative budget");
  if (k == 0) {
    // the empty tuple is the only candidate
    if (a)
      for (const auto& [v, ws] : *a)
        if (d.has_vertex(v) && !ws.allows(0)) return std::nullopt;
    if (!is_acyclic(d).is_dag()) return std::nullopt;
    return DecyclingFamily();
  }

  const int n = d.order();
  const long long bits = static_cast<long long>(k) * n;
  if (bits > std::min(limits.enumeration_bits, 62))
    throw CapExceeded("brute_decide: " + std::to_string(bits) +
                      " enumeration bits exceed cap of " +
                      std::to_string(limits.enumeration_bits));

  LocalInstance inst(d, a);
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint64_t vmask = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(k));
  for (std::uint64_t c = 0; c < total; ++c) {
    for (int j = 0; j < k; ++j)
      masks[static_cast<std::size_t>(j)] = (c >> (j * n)) & vmask;
    if (inst.accepts(masks)) return family_from_masks(d, masks);
  }
  return std::nullopt;
}

std::optional<int> brute_inversion_number(const OrientedGraph& d, int kmax,
                                          const SolveLimits& limits) {
  for (int k = 0; k <= kmax; ++k)
    if (brute_decide(d, k, std::nullopt, limits)) return k;
  return std::nullopt;
}

namespace {

struct NodeEnumerator {
  OrientedGraph sub;                       // D[V_t]
  std::vector<Vertex> bag;                 // sorted
  std::vector<std::pair<int, int>> arcs;   // local to V_t
  std::vector<int> bag_local;              // bag index -> V_t local index
  int nv = 0;

  NodeEnumerator(const OrientedGraph& d, const NiceTreeDecomposition& ntd, int node) {
    const auto vt = ntd.subtree_vertices()[static_cast<std::size_t>(node)];
    bag = ntd.nodes[static_cast<std::size_t>(node)].bag;
    sub = induced_subgraph(d, vt);
    nv = sub.order();
    for (const auto& [u, v] : sub.arcs())
      arcs.emplace_back(sub.local_index(u), sub.local_index(v));
    for (Vertex v : bag) bag_local.push_back(sub.local_index(v));
  }

  // Applies the family given by membership masks over V_t-local indices and,
  // if the result is a DAG, returns the bag-restricted reachability as a
  // pair mask w.r.t. `layout` (which must carry this node's bag).
  std::optional<std::uint64_t> reach_if_dag(const std::vector<std::uint64_t>& masks,
                                            const BagLayout& layout) const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(nv));
    std::vector<int> indeg(static_cast<std::size_t>(nv), 0);
    for (auto [u, v] : arcs) {
      int parity = 0;
      for (std::uint64_t m : masks)
        parity ^= static_cast<int>((m >> u) & (m >> v) & 1u);
      if (parity) std::swap(u, v);
      out[static_cast<std::size_t>(u)].push_back(v);
      ++indeg[static_cast<std::size_t>(v)];
    }
    std::vector<int> queue;
    for (int v = 0; v < nv; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::size_t qh = 0;
    int removed = 0;
    while (qh < queue.size()) {
      int u = queue[qh++];
      ++removed;
      for (int w : out[static_cast<std::size_t>(u)])
        if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
    if (removed != nv) return std::nullopt;

    std::uint64_t pmask = 0;
    std::vector<char> seen(static_cast<std::size_t>(nv));
    std::vector<int> stack;
    for (std::size_t bi = 0; bi < bag_local.size(); ++bi) {
      std::fill(seen.begin(), seen.end(), 0);
      stack.clear();
      for (int w : out[static_cast<std::size_t>(bag_local[bi])]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : out[static_cast<std::size_t>(u)])
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            stack.push_back(w);
          }
      }
      for (std::size_t bj = 0; bj < bag_local.size(); ++bj)
        if (bj != bi && seen[static_cast<std::size_t>(bag_local[bj])])
          pmask |= std::uint64_t{1}
                   << layout.slot(static_cast<int>(bi), static_cast<int>(bj));
    }
    return pmask;
  }
};

}  // namespace

bool brute_table_entry(const OrientedGraph& d, const NiceTreeDecomposition& ntd,
                       int node, const std::vector<Arc>& p,
                       const std::vector<std::vector<Vertex>>& s, int k,
                       const SolveLimits& limits) {
  if (static_cast<int>(s.size()) != k)
    throw std::invalid_argument("tuple length differs from k");
  NodeEnumerator en(d, ntd, node);
  BagLayout layout(en.bag, k);
  const std::uint64_t want = layout.encode_pairs(p);

  // free positions: V_t minus the bag
  std::vector<int> free_local;
  for (int i = 0; i < en.nv; ++i)
    if (std::find(en.bag_local.begin(), en.bag_local.end(), i) == en.bag_local.end())
      free_local.push_back(i);
  const long long bits =
      static_cast<long long>(k) * static_cast<long long>(free_local.size());
  if (bits > std::min(limits.enumeration_bits, 62))
    throw CapExceeded("brute_table_entry: enumeration bits exceed cap");

  std::vector<std::uint64_t> base(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < k; ++j)
    for (Vertex v : s[static_cast<std::size_t>(j)])
      base[static_cast<std::size_t>(j)] |= std::uint64_t{1} << en.sub.local_index(v);

  std::vector<std::uint64_t> masks(static_cast<std::size_t>(k));
  const std::uint64_t total = std::uint64_t{1} << bits;
  const int fcount = static_cast<int>(free_local.size());
  for (std::uint64_t c = 0; c < total; ++c) {
    for (int j = 0; j < k; ++j) {
      std::uint64_t m = base[static_cast<std::size_t>(j)];
      for (int f = 0; f < fcount; ++f)
        if (c >> (j * fcount + f) & 1u)
          m |= std::uint64_t{1} << free_local[static_cast<std::size_t>(f)];
      masks[static_cast<std::size_t>(j)] = m;
    }
    auto reach = en.reach_if_dag(masks, layout);
    if (reach && *reach == want) return true;
  }
  return false;
}

std::vector<std::uint64_t> brute_node_table(const OrientedGraph& d,
                                            const NiceTreeDecomposition& ntd,
                                            int node, const BagLayout& layout,
                                            const SolveLimits& limits) {
  NodeEnumerator en(d, ntd, node);
  if (layout.bag() != en.bag)
    throw std::invalid_argument("layout bag differs from node bag");
  const int k = layout.k();
  const long long bits = static_cast<long long>(k) * en.nv;
  if (bits > std::min(limits.enumeration_bits, 62))
    throw CapExceeded("brute_node_table: enumeration bits exceed cap");

  std::set<std::uint64_t> keys;
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(k));
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint64_t vmask =
      en.nv == 0 ? 0 : (std::uint64_t{1} << en.nv) - 1;
  for (std::uint64_t c = 0; c < total; ++c) {
    for (int j = 0; j < k; ++j)
      masks[static_cast<std::size_t>(j)] = (c >> (j * en.nv)) & vmask;
    auto reach = en.reach_if_dag(masks, layout);
    if (!reach) continue;
    std::uint64_t smask = 0;
    for (int j = 0; j < k; ++j)
      for (std::size_t bi = 0; bi < en.bag_local.size(); ++bi)
        if (masks[static_cast<std::size_t>(j)] >> en.bag_local[bi] & 1u)
          smask |= std::uint64_t{1} << (j * layout.size() + static_cast<int>(bi));
    keys.insert(layout.key(*reach, smask));
  }
  return std::vector<std::uint64_t>(keys.begin(), keys.end());
}

}  // namespace kinv
