#pragma once

#include <cstdint>
#include <vector>

namespace actsel {

/// Sorted, duplicate-free list of 0-based indices. Files and the CLI use
/// 1-based indices; conversion happens only at the I/O boundary.
using IndexSet = std::vector<int>;

/// Enumeration budgets. Every combinatorial step checks its budget up front
/// and fails loudly instead of running unboundedly.
struct Limits {
  std::uint64_t enumeration = 10'000'000;  // C(m, g_i) or C(m, g_i + f)
  std::uint64_t dp_states = 10'000'000;    // prod_i (b_i + 1)
  int brute_force_sets = 25;               // 2^m exhaustive oracles
  std::uint64_t fault_sets = 1'000'000;    // C(|S|, f) in verify
};

}  // namespace actsel
