#pragma once

#include <cstdint>
#include <vector>

#include "actsel/types.hpp"

namespace actsel {

/// Set multicover instance with multiplicity 1: pick the fewest sets so
/// that element i lies in at least coverage[i] chosen sets. Elements are
/// the p modes, sets are the m actuators.
struct CoverInstance {
  int universe = 0;
  std::vector<int> coverage;   // b_i >= 1, size = universe
  std::vector<IndexSet> sets;  // R_j subset of [universe]

  int set_count() const { return static_cast<int>(sets.size()); }

  /// Throws InvalidInput on malformed data (bad sizes, b_i < 1, R_j out of
  /// range or unsorted).
  void validate() const;
  /// |{j : i in R_j}| >= b_i for every i.
  bool feasible() const;
  /// True iff `chosen` satisfies every coverage requirement.
  bool covered_by(const IndexSet& chosen) const;
  /// max_j |R_j|.
  int max_set_size() const;
};

struct CoverSolution {
  IndexSet chosen;
  bool optimal = false;

  int cardinality() const { return static_cast<int>(chosen.size()); }
};

/// Greedy by residual coverage; ties go to the smallest set index.
CoverSolution greedy_multicover(const CoverInstance& inst);

/// Exact dynamic program over residual-coverage vectors. Throws
/// StateSpaceTooLarge when prod_i (b_i + 1) exceeds `state_cap`.
CoverSolution exact_multicover_dp(const CoverInstance& inst,
                                  std::uint64_t state_cap = Limits{}.dp_states);

/// Exhaustive oracle: first feasible subset in (cardinality, lexicographic)
/// order. Throws InstanceTooLarge above `max_sets`.
CoverSolution brute_force_cover(const CoverInstance& inst,
                                int max_sets = Limits{}.brute_force_sets);

}  // namespace actsel
