#include "kinv/generators.hpp"

#include <stdexcept>

namespace kinv {

OrientedGraph gen_tournament(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_tournament: n must be positive");
  SplitMix64 rng(seed);
  std::vector<Vertex> verts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) verts[static_cast<std::size_t>(i)] = i;
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng.coin() == 0)
        arcs.emplace_back(i, j);
      else
        arcs.emplace_back(j, i);
    }
  return OrientedGraph::from_arcs(std::move(verts), arcs);
}

OrientedGraph gen_block_digraph(int num_blocks, int max_block_size, std::uint64_t seed) {
  if (num_blocks < 1) throw std::invalid_argument("gen_block_digraph: need a block");
  if (max_block_size < 2) throw std::invalid_argument("gen_block_digraph: blocks need 2 vertices");
  SplitMix64 rng(seed);
  int n = 0;
  std::vector<Arc> arcs;
  for (int b = 0; b < num_blocks; ++b) {
    const int size = 2 + static_cast<int>(rng.bounded(
                             static_cast<std::uint64_t>(max_block_size - 1)));
    std::vector<Vertex> members;
    if (b == 0) {
      for (int i = 0; i < size; ++i) members.push_back(n + i);
      n += size;
    } else {
      members.push_back(static_cast<Vertex>(rng.bounded(static_cast<std::uint64_t>(n))));
      for (int i = 0; i < size - 1; ++i) members.push_back(n + i);
      n += size - 1;
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (rng.coin() == 0)
          arcs.emplace_back(members[i], members[j]);
        else
          arcs.emplace_back(members[j], members[i]);
      }
  }
  std::vector<Vertex> verts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) verts[static_cast<std::size_t>(i)] = i;
  return OrientedGraph::from_arcs(std::move(verts), arcs);
}

KtreeInstance gen_partial_ktree_digraph(int n, int width, std::uint64_t seed) {
  if (width < 1) throw std::invalid_argument("gen_partial_ktree_digraph: width must be positive");
  if (width >= n) throw std::invalid_argument("gen_partial_ktree_digraph: width must be < n");
  SplitMix64 rng(seed);

  std::vector<Arc> edges;  // undirected, tail < head, insertion order
  std::vector<std::vector<Vertex>> cliques;  // width-sized attachment cliques

  // base clique on 0..width
  for (int i = 0; i <= width; ++i)
    for (int j = i + 1; j <= width; ++j) edges.emplace_back(i, j);
  for (int skip = 0; skip <= width; ++skip) {
    std::vector<Vertex> cl;
    for (int i = 0; i <= width; ++i)
      if (i != skip) cl.push_back(i);
    cliques.push_back(std::move(cl));
  }

  for (int v = width + 1; v < n; ++v) {
    const auto attach = cliques[static_cast<std::size_t>(
        rng.bounded(static_cast<std::uint64_t>(cliques.size())))];
    for (Vertex u : attach) edges.emplace_back(u, v);
    for (std::size_t skip = 0; skip < attach.size(); ++skip) {
      std::vector<Vertex> cl;
      for (std::size_t i = 0; i < attach.size(); ++i)
        if (i != skip) cl.push_back(attach[i]);
      cl.push_back(v);
      cliques.push_back(std::move(cl));
    }
  }

  std::vector<Arc> arcs;
  for (const auto& [u, v] : edges) {
    if (rng.bounded(4) == 0) continue;  // delete with probability 1/4
    if (rng.coin() == 0)
      arcs.emplace_back(u, v);
    else
      arcs.emplace_back(v, u);
  }

  KtreeInstance inst;
  std::vector<Vertex> verts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) verts[static_cast<std::size_t>(i)] = i;
  inst.graph = OrientedGraph::from_arcs(std::move(verts), arcs);
  for (int v = n - 1; v >= 0; --v) inst.elimination_order.push_back(v);
  return inst;
}

}  // namespace kinv
