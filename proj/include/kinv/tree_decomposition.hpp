#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kinv/digraph.hpp"

namespace kinv {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;     // each sorted ascending
  std::vector<std::pair<int, int>> edges;    // tree edges between bag indices

  int width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }
};

// Greedy min-fill elimination (ties: min degree, then smallest id). Always
// succeeds; the result is a tree even for disconnected inputs.
TreeDecomposition compute_tree_decomposition(const OrientedGraph& g);

// Exact minimum-width decomposition via DP over vertex subsets; intended for
// n <= 12 (throws std::invalid_argument beyond n = 20).
TreeDecomposition exact_tree_decomposition(const OrientedGraph& g);

// Checks the tree axioms plus vertex cover, edge cover and connected
// occurrence subtrees. On failure, *why names the first violation.
bool validate_tree_decomposition(const OrientedGraph& g, const TreeDecomposition& td,
                                 std::string* why = nullptr);

class NiceTreeDecomposition {
 public:
  enum class Kind { Leaf, Introduce, Forget, Join };

  struct Node {
    Kind kind = Kind::Leaf;
    std::vector<Vertex> bag;  // sorted ascending
    int child1 = -1;
    int child2 = -1;          // join only
    Vertex special = -1;      // introduced / forgotten vertex
  };

  // Children always have smaller indices than their parent, so iterating
  // nodes in index order is a valid bottom-up sweep; the root is last.
  std::vector<Node> nodes;
  int root = -1;

  int width() const {
    std::size_t w = 0;
    for (const auto& nd : nodes) w = std::max(w, nd.bag.size());
    return static_cast<int>(w) - 1;
  }

  // Union of bags in the subtree rooted at each node (V_t), sorted.
  std::vector<std::vector<Vertex>> subtree_vertices() const;
};

// Expansion into leaf/introduce/forget/join nodes with empty root and leaf
// bags; width is unchanged.
NiceTreeDecomposition nicify(const TreeDecomposition& td);

bool validate_nice(const OrientedGraph& g, const NiceTreeDecomposition& ntd,
                   std::string* why = nullptr);

// Decomposition file format: '#' comments, `b <id> <v1> <v2> ...` bag lines
// and `e <id1> <id2>` tree-edge lines, ids and vertices 1-indexed.
TreeDecomposition parse_tree_decomposition(std::istream& in);
TreeDecomposition parse_tree_decomposition_file(const std::string& path);
std::string format_tree_decomposition(const TreeDecomposition& td);

}  // namespace kinv
