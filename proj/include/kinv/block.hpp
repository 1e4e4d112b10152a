#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinv/digraph.hpp"
#include "kinv/inversion.hpp"
#include "kinv/limits.hpp"
#include "kinv/tournament.hpp"
#include "kinv/weight_set.hpp"

namespace kinv {

struct NotBlockGraphError : std::runtime_error {
  std::vector<Vertex> offending_block;
  explicit NotBlockGraphError(std::vector<Vertex> block);
};

// Bipartite tree of blocks and cut vertices, rooted at the block holding the
// highest-labeled vertex. Children always precede parents in `sweep`.
struct BlockTree {
  struct Node {
    bool is_block = false;
    std::vector<Vertex> vertices;  // clique vertex set; {cut} for cut nodes
    Vertex cut = -1;               // set for cut nodes
    int parent = -1;
    std::vector<int> children;
    std::vector<Vertex> subtree_vertices;  // V(D_u), sorted
  };
  std::vector<Node> nodes;
  int root = -1;
  std::vector<int> sweep;  // u_1 .. u_{p+q}
};

// Requires a connected underlying graph whose blocks are all cliques; throws
// NotBlockGraphError naming the first non-clique block otherwise.
BlockTree build_block_tree(const OrientedGraph& g);

struct BlockSolveOptions {
  SolveLimits limits;
  SolveStats* stats = nullptr;
  bool want_certificate = false;
  bool want_trace = false;
  KitStrategy kit_strategy = KitStrategy::Compression;
};

// W-set of one block node: weights w on the parent cut vertex for which the
// block tournament admits a size-k family matching the children's W-sets.
// Without a parent the answer is weight-independent: full set or empty.
WeightSet block_weight_set(const OrientedGraph& block_digraph, int k,
                           std::optional<Vertex> parent_cut,
                           const std::vector<std::pair<Vertex, WeightSet>>& child_cut_ws,
                           const BlockSolveOptions& opt = {});

struct BlockTraceEntry {
  bool is_block = false;
  std::vector<Vertex> vertices;          // block clique or {cut}
  Vertex port = -1;                      // cut vertex whose weight W constrains (-1 at root)
  std::vector<Vertex> subtree_vertices;  // V(D_u)
  WeightSet w;
};

struct BlockSolveResult {
  bool yes = false;
  std::optional<DecyclingFamily> family;  // when requested and yes
  std::vector<BlockTraceEntry> trace;     // when requested
};

BlockSolveResult solve_block_graph(const OrientedGraph& d, int k,
                                   const BlockSolveOptions& opt = {});

}  // namespace kinv
