#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "kinv/digraph.hpp"
#include "kinv/dp_key.hpp"
#include "kinv/limits.hpp"
#include "kinv/tree_decomposition.hpp"

namespace kinv {

// Directed graph over a bag (loops absent, opposite pairs allowed).
struct AuxGraph {
  std::vector<Vertex> vertices;  // the bag, sorted
  std::vector<Arc> arcs;         // sorted
};

// Aux graph of an introduce node: the pairs of p2 plus every arc between the
// introduced vertex w and its bag neighbors, re-oriented by the parity of the
// number of sets of s containing both endpoints. p2 must not touch w.
AuxGraph introduce_aux_graph(const OrientedGraph& d, const std::vector<Vertex>& bag,
                             Vertex w, const std::vector<Arc>& p2,
                             const std::vector<std::vector<Vertex>>& s);

// Aux graph of a join node: transitive closure of q1 u q2.
AuxGraph join_aux_graph(const std::vector<Vertex>& bag, const std::vector<Arc>& q1,
                        const std::vector<Arc>& q2);

// Set of true keys of one node, in that node's BagLayout encoding.
using NodeTable = std::unordered_set<std::uint64_t>;

// Literal per-key recurrences. Child tables are keyed by the child's layout.
bool dp_introduce(const OrientedGraph& d, const NiceTreeDecomposition& ntd, int node,
                  const std::vector<Arc>& p, const std::vector<std::vector<Vertex>>& s,
                  const NodeTable& child_table);
bool dp_forget(const NiceTreeDecomposition& ntd, int node, const std::vector<Arc>& p,
               const std::vector<std::vector<Vertex>>& s, const NodeTable& child_table);
bool dp_join(const NiceTreeDecomposition& ntd, int node, const std::vector<Arc>& p,
             const std::vector<std::vector<Vertex>>& s, const NodeTable& child1,
             const NodeTable& child2);

struct TreewidthOptions {
  SolveLimits limits;
  SolveStats* stats = nullptr;
  bool keep_tables = false;
  bool use_exact_decomposition = false;  // exact width search (small n)
};

struct TreewidthRun {
  bool yes = false;
  int width = -1;
  NiceTreeDecomposition ntd;
  std::vector<NodeTable> tables;  // per node, when keep_tables
};

// Bottom-up fill of all node tables; the answer is the root entry (empty P,
// empty sets). Tables are filled by propagating child true-entries forward,
// which computes exactly the same tables as the per-key recurrences.
TreewidthRun solve_treewidth_detailed(const OrientedGraph& d, int k,
                                      const std::optional<TreeDecomposition>& given,
                                      const TreewidthOptions& opt = {});

bool solve_treewidth(const OrientedGraph& d, int k, const TreewidthOptions& opt = {});

}  // namespace kinv
