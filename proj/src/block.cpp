#include "kinv/block.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kinv {

namespace {

std::string describe_block(const std::vector<Vertex>& block) {
  std::ostringstream out;
  out << "not a block graph: block {";
  for (std::size_t i = 0; i < block.size(); ++i)
    out << (i ? " " : "") << block[i] + 1;
  out << "} is not a clique";
  return out.str();
}

}  // namespace

NotBlockGraphError::NotBlockGraphError(std::vector<Vertex> block)
    : std::runtime_error(describe_block(block)), offending_block(std::move(block)) {}

BlockTree build_block_tree(const OrientedGraph& g) {
  if (classify(g).components.size() != 1)
    throw std::invalid_argument("build_block_tree: graph must be connected");

  const auto blocks = biconnected_components(g);
  for (const auto& blk : blocks) {
    std::size_t edges = 0;
    for (Vertex u : blk)
      for (Vertex v : blk)
        if (u < v && (g.has_arc(u, v) || g.has_arc(v, u))) ++edges;
    if (edges != blk.size() * (blk.size() - 1) / 2) {
      auto sorted = blk;
      std::sort(sorted.begin(), sorted.end());
      throw NotBlockGraphError(std::move(sorted));
    }
  }

  // cut vertices appear in more than one block
  std::map<Vertex, std::vector<int>> blocks_of;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (Vertex v : blocks[static_cast<std::size_t>(b)]) blocks_of[v].push_back(b);

  BlockTree bt;
  std::vector<int> block_node(blocks.size());
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    BlockTree::Node nd;
    nd.is_block = true;
    nd.vertices = blocks[static_cast<std::size_t>(b)];
    std::sort(nd.vertices.begin(), nd.vertices.end());
    block_node[static_cast<std::size_t>(b)] = static_cast<int>(bt.nodes.size());
    bt.nodes.push_back(std::move(nd));
  }
  std::map<Vertex, int> cut_node;
  for (const auto& [v, bs] : blocks_of) {
    if (bs.size() < 2) continue;
    BlockTree::Node nd;
    nd.cut = v;
    nd.vertices = {v};
    cut_node[v] = static_cast<int>(bt.nodes.size());
    bt.nodes.push_back(std::move(nd));
  }

  std::vector<std::vector<int>> adj(bt.nodes.size());
  for (const auto& [v, bs] : blocks_of) {
    if (bs.size() < 2) continue;
    for (int b : bs) {
      adj[static_cast<std::size_t>(cut_node[v])].push_back(block_node[static_cast<std::size_t>(b)]);
      adj[static_cast<std::size_t>(block_node[static_cast<std::size_t>(b)])].push_back(cut_node[v]);
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // root: first block containing the highest-labeled vertex
  const Vertex top = g.vertices().back();
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    const auto& nd = bt.nodes[static_cast<std::size_t>(block_node[static_cast<std::size_t>(b)])];
    if (std::binary_search(nd.vertices.begin(), nd.vertices.end(), top)) {
      bt.root = block_node[static_cast<std::size_t>(b)];
      break;
    }
  }

  // orient the tree and produce a post-order sweep
  std::vector<std::pair<int, std::size_t>> stack{{bt.root, 0}};
  bt.nodes[static_cast<std::size_t>(bt.root)].parent = -1;
  std::vector<char> visited(bt.nodes.size(), 0);
  visited[static_cast<std::size_t>(bt.root)] = 1;
  while (!stack.empty()) {
    auto& [u, next_child] = stack.back();
    const auto& nbrs = adj[static_cast<std::size_t>(u)];
    if (next_child == 0)
      for (int w : nbrs)
        if (!visited[static_cast<std::size_t>(w)]) {
          visited[static_cast<std::size_t>(w)] = 1;
          bt.nodes[static_cast<std::size_t>(w)].parent = u;
          bt.nodes[static_cast<std::size_t>(u)].children.push_back(w);
        }
    if (next_child < bt.nodes[static_cast<std::size_t>(u)].children.size()) {
      int c = bt.nodes[static_cast<std::size_t>(u)].children[next_child++];
      stack.emplace_back(c, 0);
    } else {
      bt.sweep.push_back(u);
      stack.pop_back();
    }
  }

  for (int u : bt.sweep) {
    auto& nd = bt.nodes[static_cast<std::size_t>(u)];
    std::set<Vertex> acc(nd.vertices.begin(), nd.vertices.end());
    for (int c : nd.children) {
      const auto& sub = bt.nodes[static_cast<std::size_t>(c)].subtree_vertices;
      acc.insert(sub.begin(), sub.end());
    }
    nd.subtree_vertices.assign(acc.begin(), acc.end());
  }
  return bt;
}

namespace {

// Positions of sets containing c are permuted onto `with_positions`; the
// remaining sets fill the other slots in order. Order invariance of families
// makes this a no-op on the applied graph.
DecyclingFamily renumber_for_cut(const DecyclingFamily& f, Vertex c,
                                 const std::vector<int>& with_positions) {
  std::vector<int> have_with, have_without;
  for (int j = 0; j < static_cast<int>(f.size()); ++j) {
    if (f.set_contains(static_cast<std::size_t>(j), c))
      have_with.push_back(j);
    else
      have_without.push_back(j);
  }
  if (have_with.size() != with_positions.size())
    throw std::logic_error("renumber_for_cut: weight mismatch");
  std::vector<char> is_with(f.size(), 0);
  for (int p : with_positions) is_with[static_cast<std::size_t>(p)] = 1;
  std::vector<std::vector<Vertex>> sets(f.size());
  std::size_t wi = 0, oi = 0;
  for (std::size_t p = 0; p < f.size(); ++p)
    sets[p] = is_with[p] ? f.sets[static_cast<std::size_t>(have_with[wi++])]
                         : f.sets[static_cast<std::size_t>(have_without[oi++])];
  return DecyclingFamily(std::move(sets));
}

DecyclingFamily merge_families(const DecyclingFamily& a, const DecyclingFamily& b) {
  if (a.size() != b.size()) throw std::logic_error("merge_families: length mismatch");
  std::vector<std::vector<Vertex>> sets(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    sets[j] = a.sets[j];
    sets[j].insert(sets[j].end(), b.sets[j].begin(), b.sets[j].end());
  }
  return DecyclingFamily(std::move(sets));
}

int induced_weight(const DecyclingFamily& f, Vertex v) {
  int w = 0;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f.set_contains(j, v)) ++w;
  return w;
}

struct NodeSolve {
  WeightSet w;
  std::map<int, DecyclingFamily> witness;  // weight -> family over D_u
};

// One block node: the per-weight WKIT loop of the sweep, with optional
// witness assembly from the children's witnesses.
NodeSolve solve_block_node(const OrientedGraph& block_digraph, int k,
                           std::optional<Vertex> parent_cut,
                           const std::vector<std::pair<Vertex, WeightSet>>& child_ws,
                           const std::vector<const NodeSolve*>& child_solves,
                           const BlockSolveOptions& opt) {
  NodeSolve out;
  WkitOptions wopt;
  wopt.limits = opt.limits;
  wopt.stats = opt.stats;
  wopt.kit_strategy = opt.kit_strategy;
  wopt.want_certificate = opt.want_certificate;

  std::vector<WeightSet> a(static_cast<std::size_t>(block_digraph.order()),
                           WeightSet::all_up_to(k));
  for (const auto& [c, ws] : child_ws)
    a[static_cast<std::size_t>(block_digraph.local_index(c))] = ws;

  auto assemble = [&](const DecyclingFamily& x) {
    DecyclingFamily merged = x;
    for (std::size_t ci = 0; ci < child_ws.size(); ++ci) {
      const Vertex c = child_ws[ci].first;
      const int wc = induced_weight(x, c);
      std::vector<int> with_positions;
      for (int j = 0; j < static_cast<int>(x.size()); ++j)
        if (x.set_contains(static_cast<std::size_t>(j), c)) with_positions.push_back(j);
      const DecyclingFamily aligned = renumber_for_cut(
          child_solves[ci]->witness.at(wc), c, with_positions);
      merged = merge_families(merged, aligned);
    }
    return merged;
  };

  if (!parent_cut) {
    WkitResult res = wkit(block_digraph, k, a, wopt);
    if (res.yes) {
      out.w = WeightSet::all_up_to(k);
      if (opt.want_certificate) out.witness.emplace(-1, assemble(*res.family));
    }
    return out;
  }

  const int parent_idx = block_digraph.local_index(*parent_cut);
  for (int w = 0; w <= k; ++w) {
    a[static_cast<std::size_t>(parent_idx)] = WeightSet::single(w);
    WkitResult res = wkit(block_digraph, k, a, wopt);
    if (!res.yes) continue;
    out.w.allow(w);
    if (opt.want_certificate) out.witness.emplace(w, assemble(*res.family));
  }
  return out;
}

}  // namespace

WeightSet block_weight_set(const OrientedGraph& block_digraph, int k,
                           std::optional<Vertex> parent_cut,
                           const std::vector<std::pair<Vertex, WeightSet>>& child_cut_ws,
                           const BlockSolveOptions& opt) {
  BlockSolveOptions o = opt;
  o.want_certificate = false;
  return solve_block_node(block_digraph, k, parent_cut, child_cut_ws, {}, o).w;
}

BlockSolveResult solve_block_graph(const OrientedGraph& d, int k,
                                   const BlockSolveOptions& opt) {
  BlockSolveResult result;
  result.yes = true;
  DecyclingFamily total;
  total.sets.assign(static_cast<std::size_t>(k), {});

  for (const auto& comp : classify(d).components) {
    if (comp.size() == 1) continue;  // isolated vertices are trivially yes
    const OrientedGraph dc = induced_subgraph(d, comp);
    const BlockTree bt = build_block_tree(dc);

    std::vector<NodeSolve> solves(bt.nodes.size());
    bool comp_yes = false;
    for (int u : bt.sweep) {
      const auto& nd = bt.nodes[static_cast<std::size_t>(u)];
      if (!nd.is_block) {
        // cut vertex: intersect the children's sets
        NodeSolve ns;
        ns.w = WeightSet::all_up_to(k);
        std::uint32_t mask = ns.w.mask();
        for (int c : nd.children)
          mask &= solves[static_cast<std::size_t>(c)].w.mask();
        WeightSet inter;
        for (int w = 0; w <= k; ++w)
          if (mask >> w & 1u) inter.allow(w);
        ns.w = inter;
        if (opt.want_certificate) {
          for (int w = 0; w <= k; ++w) {
            if (!inter.allows(w)) continue;
            std::vector<int> with_positions(static_cast<std::size_t>(w));
            for (int j = 0; j < w; ++j) with_positions[static_cast<std::size_t>(j)] = j;
            DecyclingFamily merged;
            merged.sets.assign(static_cast<std::size_t>(k), {});
            for (int c : nd.children) {
              const DecyclingFamily aligned = renumber_for_cut(
                  solves[static_cast<std::size_t>(c)].witness.at(w), nd.cut,
                  with_positions);
              merged = merge_families(merged, aligned);
            }
            ns.witness.emplace(w, std::move(merged));
          }
        }
        solves[static_cast<std::size_t>(u)] = std::move(ns);
      } else {
        std::optional<Vertex> parent_cut;
        if (nd.parent >= 0)
          parent_cut = bt.nodes[static_cast<std::size_t>(nd.parent)].cut;
        std::vector<std::pair<Vertex, WeightSet>> child_ws;
        std::vector<const NodeSolve*> child_solves;
        for (int c : nd.children) {
          child_ws.emplace_back(bt.nodes[static_cast<std::size_t>(c)].cut,
                                solves[static_cast<std::size_t>(c)].w);
          child_solves.push_back(&solves[static_cast<std::size_t>(c)]);
        }
        const OrientedGraph block_digraph = induced_subgraph(dc, nd.vertices);
        solves[static_cast<std::size_t>(u)] = solve_block_node(
            block_digraph, k, parent_cut, child_ws, child_solves, opt);
        if (u == bt.root) comp_yes = !solves[static_cast<std::size_t>(u)].w.is_empty();
      }

      if (opt.want_trace) {
        const auto& nd2 = bt.nodes[static_cast<std::size_t>(u)];
        BlockTraceEntry te;
        te.is_block = nd2.is_block;
        te.vertices = nd2.vertices;
        te.subtree_vertices = nd2.subtree_vertices;
        te.port = nd2.is_block
                      ? (nd2.parent >= 0 ? bt.nodes[static_cast<std::size_t>(nd2.parent)].cut
                                         : -1)
                      : nd2.cut;
        te.w = solves[static_cast<std::size_t>(u)].w;
        result.trace.push_back(std::move(te));
      }
    }

    if (!comp_yes) {
      result.yes = false;
      result.family.reset();
      if (!opt.want_trace) return result;
      continue;
    }
    if (opt.want_certificate && result.yes) {
      const auto& root_witness =
          solves[static_cast<std::size_t>(bt.root)].witness.at(-1);
      DecyclingFamily padded = root_witness;
      while (padded.size() < static_cast<std::size_t>(k)) padded.sets.emplace_back();
      total = merge_families(total, padded);
    }
  }

  if (result.yes && opt.want_certificate) result.family = std::move(total);
  return result;
}

}  // namespace kinv
