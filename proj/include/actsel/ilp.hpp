#pragma once

#include <vector>

#include "actsel/reduction.hpp"
#include "actsel/types.hpp"

namespace actsel {

/// One mode's constraint block of the selection program
///
///   min 1'y  s.t.  W y >= (W 1) .* d,  1'd >= 1,  y, d binary.
///
/// The slack d is implicit: y satisfies the block iff some row of W lies
/// entirely inside supp(y).
struct IlpBlock {
  int required = 0;
  std::vector<IndexSet> rows;

  int slack_dim() const { return static_cast<int>(rows.size()); }
  bool satisfied_by(const IndexSet& chosen) const;
};

struct IlpModel {
  int m = 0;
  std::vector<IlpBlock> blocks;

  /// Throws InvalidInput on row-sum or index violations.
  void validate() const;
  bool satisfied_by(const IndexSet& chosen) const;
};

struct IlpSolution {
  IndexSet chosen;  // supp(y*)
  bool optimal = true;

  int cardinality() const { return static_cast<int>(chosen.size()); }
};

IlpModel build_model(const SelectionMatrices& sel);

/// Branch and bound over y. Returns the minimum-cardinality support, and
/// among those the lexicographically smallest. Models with m > 64 are
/// rejected with InstanceTooLarge.
IlpSolution solve_exact(const IlpModel& model);

/// Exhaustive reference with the same canonical-optimum contract.
IlpSolution solve_with_oracle(const IlpModel& model, int max_m = Limits{}.brute_force_sets);

}  // namespace actsel
