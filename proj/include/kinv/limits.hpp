#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kinv {

// Thrown when a solver or oracle would exceed a configured resource cap.
// Callers treat this as "no answer", never as a yes/no verdict.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct SolveLimits {
  // Brute-force enumeration budget: a call may enumerate at most
  // 2^enumeration_bits candidate tuples.
  int enumeration_bits = 24;
  // Maximum number of triple sets kept per level of the tournament DP.
  std::size_t triple_set_cap = 100000;
  // Maximum conceptual table size 2^{|P_t|} * 2^{k|X_t|} per decomposition node.
  std::uint64_t table_entry_cap = std::uint64_t{1} << 26;
  // `auto` dispatch falls back from the treewidth solver when the heuristic
  // decomposition is wider than this.
  int auto_width_cap = 8;
};

// Counters reported by solvers; wall time is measured by callers.
struct SolveStats {
  std::size_t peak_triple_sets = 0;   // max |B_t| over all levels and cwkit calls
  std::size_t peak_table_entries = 0; // max stored true entries over DP nodes
};

}  // namespace kinv
