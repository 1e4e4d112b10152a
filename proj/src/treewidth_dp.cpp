#include "kinv/treewidth_dp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kinv {

namespace {

// parity of |{i : bag vertices a and b both lie in S_i}| from an S mask
int pair_parity(const BagLayout& lt, std::uint64_t smask, int a, int b) {
  const int sz = lt.size();
  int parity = 0;
  for (int j = 0; j < lt.k(); ++j) {
    const std::uint64_t field = smask >> (j * sz);
    parity ^= static_cast<int>((field >> a) & (field >> b) & 1u);
  }
  return parity;
}

// arcs between w and the rest of the bag, oriented by D and the S parities
std::uint64_t w_arcs_mask(const OrientedGraph& d, const BagLayout& lt, int wi,
                          std::uint64_t smask) {
  std::uint64_t arcs = 0;
  const Vertex w = lt.bag()[static_cast<std::size_t>(wi)];
  for (int vi = 0; vi < lt.size(); ++vi) {
    if (vi == wi) continue;
    const Vertex v = lt.bag()[static_cast<std::size_t>(vi)];
    int from = -1, to = -1;
    if (d.has_arc(w, v)) {
      from = wi;
      to = vi;
    } else if (d.has_arc(v, w)) {
      from = vi;
      to = wi;
    } else {
      continue;
    }
    if (pair_parity(lt, smask, wi, vi)) std::swap(from, to);
    arcs |= std::uint64_t{1} << lt.slot(from, to);
  }
  return arcs;
}

}  // namespace

AuxGraph introduce_aux_graph(const OrientedGraph& d, const std::vector<Vertex>& bag,
                             Vertex w, const std::vector<Arc>& p2,
                             const std::vector<std::vector<Vertex>>& s) {
  BagLayout lt(bag, static_cast<int>(s.size()));
  for (const auto& [u, v] : p2)
    if (u == w || v == w)
      throw std::invalid_argument("introduce_aux_graph: pair touches the introduced vertex");
  const std::uint64_t arcs = lt.encode_pairs(p2) |
                             w_arcs_mask(d, lt, lt.index_of(w), lt.encode_sets(s));
  return AuxGraph{bag, lt.decode_pairs(arcs)};
}

AuxGraph join_aux_graph(const std::vector<Vertex>& bag, const std::vector<Arc>& q1,
                        const std::vector<Arc>& q2) {
  BagLayout lt(bag, 0);
  const std::uint64_t cl = lt.mask_closure(lt.encode_pairs(q1) | lt.encode_pairs(q2));
  return AuxGraph{bag, lt.decode_pairs(cl)};
}

namespace {

struct NodeContext {
  const NiceTreeDecomposition::Node* node;
  BagLayout layout;
};

BagLayout layout_of(const NiceTreeDecomposition& ntd, int node, int k) {
  return BagLayout(ntd.nodes[static_cast<std::size_t>(node)].bag, k);
}

// child-field S mask -> parent-field S mask, for bags differing in one vertex
std::uint64_t remap_smask(const BagLayout& from, const BagLayout& to,
                          std::uint64_t smask) {
  std::uint64_t out = 0;
  for (int j = 0; j < from.k(); ++j) {
    const std::uint64_t field = (smask >> (j * from.size())) &
                                ((std::uint64_t{1} << from.size()) - 1);
    for (int i = 0; i < from.size(); ++i) {
      if (!(field >> i & 1u)) continue;
      const Vertex v = from.bag()[static_cast<std::size_t>(i)];
      if (!to.contains(v)) continue;
      out |= std::uint64_t{1} << (j * to.size() + to.index_of(v));
    }
  }
  return out;
}

std::uint64_t remap_pmask(const BagLayout& from, const BagLayout& to,
                          std::uint64_t pmask) {
  std::uint64_t out = 0;
  for (int sl = 0; sl < from.pair_slots(); ++sl) {
    if (!(pmask >> sl & 1u)) continue;
    auto [i, j] = from.slot_pair(sl);
    const Vertex u = from.bag()[static_cast<std::size_t>(i)];
    const Vertex v = from.bag()[static_cast<std::size_t>(j)];
    if (!to.contains(u) || !to.contains(v)) continue;
    out |= std::uint64_t{1} << to.slot(to.index_of(u), to.index_of(v));
  }
  return out;
}

}  // namespace

bool dp_introduce(const OrientedGraph& d, const NiceTreeDecomposition& ntd, int node,
                  const std::vector<Arc>& p, const std::vector<std::vector<Vertex>>& s,
                  const NodeTable& child_table) {
  const auto& nd = ntd.nodes[static_cast<std::size_t>(node)];
  if (nd.kind != NiceTreeDecomposition::Kind::Introduce)
    throw std::invalid_argument("dp_introduce: not an introduce node");
  const int k = static_cast<int>(s.size());
  const BagLayout lt = layout_of(ntd, node, k);
  const BagLayout lc = layout_of(ntd, nd.child1, k);
  const Vertex w = nd.special;
  const int wi = lt.index_of(w);

  const std::uint64_t pmask = lt.encode_pairs(p);
  const std::uint64_t smask = lt.encode_sets(s);
  const std::uint64_t pbar = ~pmask & ((std::uint64_t{1} << lt.pair_slots()) - 1);

  // w-free pairs of p
  std::vector<int> star_slots;
  for (int sl = 0; sl < lt.pair_slots(); ++sl) {
    if (!(pmask >> sl & 1u)) continue;
    auto [i, j] = lt.slot_pair(sl);
    if (i != wi && j != wi) star_slots.push_back(sl);
  }
  const std::uint64_t child_smask = remap_smask(lt, lc, smask);

  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << star_slots.size()); ++sub) {
    std::uint64_t p2 = 0;
    for (std::size_t i = 0; i < star_slots.size(); ++i)
      if (sub >> i & 1u) p2 |= std::uint64_t{1} << star_slots[i];
    const std::uint64_t child_key = lc.key(remap_pmask(lt, lc, p2), child_smask);
    if (!child_table.count(child_key)) continue;
    const std::uint64_t aux = p2 | w_arcs_mask(d, lt, wi, smask);
    if (!lt.mask_is_dag(aux)) continue;
    const std::uint64_t reach = lt.mask_closure(aux);
    if ((reach & pmask) != pmask) continue;  // some pair of p unreachable
    if ((reach & pbar) != 0) continue;       // a pair outside p reachable
    return true;
  }
  return false;
}

bool dp_forget(const NiceTreeDecomposition& ntd, int node, const std::vector<Arc>& p,
               const std::vector<std::vector<Vertex>>& s, const NodeTable& child_table) {
  const auto& nd = ntd.nodes[static_cast<std::size_t>(node)];
  if (nd.kind != NiceTreeDecomposition::Kind::Forget)
    throw std::invalid_argument("dp_forget: not a forget node");
  const int k = static_cast<int>(s.size());
  const BagLayout lt = layout_of(ntd, node, k);
  const BagLayout lc = layout_of(ntd, nd.child1, k);
  const Vertex w = nd.special;
  const int cwi = lc.index_of(w);

  // pairs of the child bag that contain w
  std::vector<int> r_slots;
  for (int sl = 0; sl < lc.pair_slots(); ++sl) {
    auto [i, j] = lc.slot_pair(sl);
    if (i == cwi || j == cwi) r_slots.push_back(sl);
  }
  const std::uint64_t base_pmask = remap_pmask(lt, lc, lt.encode_pairs(p));
  const std::uint64_t base_smask = remap_smask(lt, lc, lt.encode_sets(s));

  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << r_slots.size()); ++sub) {
    std::uint64_t pmask = base_pmask;
    for (std::size_t i = 0; i < r_slots.size(); ++i)
      if (sub >> i & 1u) pmask |= std::uint64_t{1} << r_slots[i];
    for (std::uint64_t wext = 0; wext < (std::uint64_t{1} << k); ++wext) {
      std::uint64_t smask = base_smask;
      for (int j = 0; j < k; ++j)
        if (wext >> j & 1u) smask |= std::uint64_t{1} << (j * lc.size() + cwi);
      if (child_table.count(lc.key(pmask, smask))) return true;
    }
  }
  return false;
}

bool dp_join(const NiceTreeDecomposition& ntd, int node, const std::vector<Arc>& p,
             const std::vector<std::vector<Vertex>>& s, const NodeTable& child1,
             const NodeTable& child2) {
  const auto& nd = ntd.nodes[static_cast<std::size_t>(node)];
  if (nd.kind != NiceTreeDecomposition::Kind::Join)
    throw std::invalid_argument("dp_join: not a join node");
  const int k = static_cast<int>(s.size());
  const BagLayout lt = layout_of(ntd, node, k);
  const std::uint64_t pmask = lt.encode_pairs(p);
  const std::uint64_t smask = lt.encode_sets(s);
  const std::uint64_t pbar = ~pmask & ((std::uint64_t{1} << lt.pair_slots()) - 1);

  // iterate all Q1, Q2 as subsets of p (submask enumeration, including 0)
  std::uint64_t q1 = pmask;
  while (true) {
    if (child1.count(lt.key(q1, smask))) {
      std::uint64_t q2 = pmask;
      while (true) {
        if (child2.count(lt.key(q2, smask))) {
          const std::uint64_t closure = lt.mask_closure(q1 | q2);
          if (lt.mask_is_dag(closure) && (closure & pmask) == pmask &&
              (closure & pbar) == 0)
            return true;
        }
        if (q2 == 0) break;
        q2 = (q2 - 1) & pmask;
      }
    }
    if (q1 == 0) break;
    q1 = (q1 - 1) & pmask;
  }
  return false;
}

namespace {

void fill_leaf(NodeTable& table) { table.insert(0); }

void fill_introduce(const OrientedGraph& d, const BagLayout& lt, const BagLayout& lc,
                    Vertex w, const NodeTable& child, NodeTable& table) {
  const int wi = lt.index_of(w);
  const int k = lt.k();
  for (const std::uint64_t ckey : child) {
    const std::uint64_t p2 = remap_pmask(lc, lt, lc.key_pmask(ckey));
    const std::uint64_t base_smask = remap_smask(lc, lt, lc.key_smask(ckey));
    for (std::uint64_t wext = 0; wext < (std::uint64_t{1} << k); ++wext) {
      std::uint64_t smask = base_smask;
      for (int j = 0; j < k; ++j)
        if (wext >> j & 1u) smask |= std::uint64_t{1} << (j * lt.size() + wi);
      const std::uint64_t aux = p2 | w_arcs_mask(d, lt, wi, smask);
      if (!lt.mask_is_dag(aux)) continue;
      table.insert(lt.key(lt.mask_closure(aux), smask));
    }
  }
}

void fill_forget(const BagLayout& lt, const BagLayout& lc, const NodeTable& child,
                 NodeTable& table) {
  for (const std::uint64_t ckey : child)
    table.insert(lt.key(remap_pmask(lc, lt, lc.key_pmask(ckey)),
                        remap_smask(lc, lt, lc.key_smask(ckey))));
}

void fill_join(const BagLayout& lt, const NodeTable& child1, const NodeTable& child2,
               NodeTable& table) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_s1, by_s2;
  for (const std::uint64_t key : child1)
    by_s1[lt.key_smask(key)].push_back(lt.key_pmask(key));
  for (const std::uint64_t key : child2)
    by_s2[lt.key_smask(key)].push_back(lt.key_pmask(key));
  NodeTable seen_union;
  for (const auto& [smask, q1s] : by_s1) {
    auto it = by_s2.find(smask);
    if (it == by_s2.end()) continue;
    seen_union.clear();
    for (const std::uint64_t q1 : q1s)
      for (const std::uint64_t q2 : it->second) {
        const std::uint64_t u = q1 | q2;
        if (!seen_union.insert(u).second) continue;
        const std::uint64_t closure = lt.mask_closure(u);
        if (!lt.mask_is_dag(closure)) continue;
        table.insert(lt.key(closure, smask));
      }
  }
}

}  // namespace

TreewidthRun solve_treewidth_detailed(const OrientedGraph& d, int k,
                                      const std::optional<TreeDecomposition>& given,
                                      const TreewidthOptions& opt) {
  if (k < 0) throw std::invalid_argument("negative budget");
  TreewidthRun run;
  TreeDecomposition td;
  if (given) {
    std::string why;
    if (!validate_tree_decomposition(d, *given, &why))
      throw std::invalid_argument("invalid tree decomposition: " + why);
    td = *given;
  } else {
    td = opt.use_exact_decomposition ? exact_tree_decomposition(d)
                                     : compute_tree_decomposition(d);
  }
  run.ntd = nicify(td);
  run.width = run.ntd.width();

  const int m = static_cast<int>(run.ntd.nodes.size());
  for (const auto& nd : run.ntd.nodes) {
    const int b = static_cast<int>(nd.bag.size());
    const int bits = b * (b - 1) + k * b;
    if (bits >= 63 || (std::uint64_t{1} << bits) > opt.limits.table_entry_cap)
      throw CapExceeded("solve_treewidth: table of 2^" + std::to_string(bits) +
                        " keys exceeds cap");
  }

  std::vector<NodeTable> tables(static_cast<std::size_t>(m));
  using Kind = NiceTreeDecomposition::Kind;
  for (int t = 0; t < m; ++t) {
    const auto& nd = run.ntd.nodes[static_cast<std::size_t>(t)];
    const BagLayout lt(nd.bag, k);
    auto& table = tables[static_cast<std::size_t>(t)];
    switch (nd.kind) {
      case Kind::Leaf:
        fill_leaf(table);
        break;
      case Kind::Introduce:
        fill_introduce(d, lt, layout_of(run.ntd, nd.child1, k), nd.special,
                       tables[static_cast<std::size_t>(nd.child1)], table);
        break;
      case Kind::Forget:
        fill_forget(lt, layout_of(run.ntd, nd.child1, k),
                    tables[static_cast<std::size_t>(nd.child1)], table);
        break;
      case Kind::Join:
        fill_join(lt, tables[static_cast<std::size_t>(nd.child1)],
                  tables[static_cast<std::size_t>(nd.child2)], table);
        break;
    }
    if (opt.stats)
      opt.stats->peak_table_entries =
          std::max(opt.stats->peak_table_entries, table.size());
    if (!opt.keep_tables) {
      if (nd.child1 >= 0) tables[static_cast<std::size_t>(nd.child1)] = NodeTable();
      if (nd.child2 >= 0) tables[static_cast<std::size_t>(nd.child2)] = NodeTable();
    }
  }

  run.yes = tables[static_cast<std::size_t>(run.ntd.root)].count(0) != 0;
  if (opt.keep_tables) run.tables = std::move(tables);
  return run;
}

bool solve_treewidth(const OrientedGraph& d, int k, const TreewidthOptions& opt) {
  return solve_treewidth_detailed(d, k, std::nullopt, opt).yes;
}

}  // namespace kinv
