#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kinv/digraph.hpp"
#include "kinv/dp_key.hpp"
#include "kinv/inversion.hpp"
#include "kinv/limits.hpp"
#include "kinv/tree_decomposition.hpp"

namespace kinv {

// Enumerates all k-tuples of subsets of V(d) in lexicographic bitmask order
// (one counter; set j takes bits [j*n, (j+1)*n)) and returns the first tuple
// accepted as a certificate, if any. Throws CapExceeded when
// k*n > limits.enumeration_bits.
std::optional<DecyclingFamily> brute_decide(
    const OrientedGraph& d, int k,
    const std::optional<WeightConstraints>& a = std::nullopt,
    const SolveLimits& limits = {});

// Least k <= kmax for which brute_decide succeeds.
std::optional<int> brute_inversion_number(const OrientedGraph& d, int kmax,
                                          const SolveLimits& limits = {});

// Ground truth for one table entry of the treewidth DP: enumerates the
// k-tuples over V_t extending s (s fixed on the bag), and reports whether
// some extension makes D[V_t] (+) S-hat a DAG whose bag-restricted
// reachability is exactly p.
bool brute_table_entry(const OrientedGraph& d, const NiceTreeDecomposition& ntd,
                       int node, const std::vector<Arc>& p,
                       const std::vector<std::vector<Vertex>>& s, int k,
                       const SolveLimits& limits = {});

// All true (P, S) keys of one node, in the key encoding of `layout`
// (layout.bag() must be the node's bag). One enumeration pass over
// P(V_t)^k; used to cross-check whole DP tables.
std::vector<std::uint64_t> brute_node_table(const OrientedGraph& d,
                                            const NiceTreeDecomposition& ntd,
                                            int node, const BagLayout& layout,
                                            const SolveLimits& limits = {});

}  // namespace kinv
