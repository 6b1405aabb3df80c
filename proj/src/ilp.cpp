#include "actsel/ilp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>

#include "actsel/combinatorics.hpp"
#include "actsel/error.hpp"

namespace actsel {
namespace {

using Mask = std::uint64_t;

Mask to_mask(const IndexSet& s) {
  Mask mask = 0;
  for (int j : s) mask |= Mask{1} << j;
  return mask;
}

IndexSet from_mask(Mask mask) {
  IndexSet s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

// Depth-first branch and bound on the actuator indicator vector.
// `selected` are variables fixed to 1, `excluded` fixed to 0.
class BranchAndBound {
 public:
  explicit BranchAndBound(const IlpModel& model) : m_(model.m) {
    for (const IlpBlock& block : model.blocks) {
      Block b;
      b.required = block.required;
      for (const IndexSet& row : block.rows) b.rows.push_back(to_mask(row));
      blocks_.push_back(std::move(b));
    }
  }

  // Smallest completion of (selected, excluded) with at most `limit`
  // actuators. With `first_only`, any completion within the limit is
  // returned as soon as it is found.
  std::optional<Mask> solve(Mask selected, Mask excluded, int limit, bool first_only) {
    best_.reset();
    limit_ = limit;
    first_only_ = first_only;
    done_ = false;
    search(selected, excluded);
    return best_;
  }

 private:
  struct Block {
    int required = 0;
    std::vector<Mask> rows;
  };

  struct Pending {
    int deficit;
    Mask candidates;
  };

  void search(Mask selected, Mask excluded) {
    const int size = std::popcount(selected);
    std::vector<Pending> pending;
    int max_deficit = 0;
    for (const Block& block : blocks_) {
      bool satisfied = false;
      int best_overlap = -1;
      Mask candidates = 0;
      for (Mask row : block.rows) {
        if ((row & excluded) != 0) continue;
        if ((row & ~selected) == 0) {
          satisfied = true;
          break;
        }
        best_overlap = std::max(best_overlap, std::popcount(row & selected));
        candidates |= row & ~selected;
      }
      if (satisfied) continue;
      if (best_overlap < 0) return;  // every row hits an excluded actuator
      const int deficit = block.required - best_overlap;
      max_deficit = std::max(max_deficit, deficit);
      pending.push_back({deficit, candidates});
    }

    if (pending.empty()) {
      if (size <= current_limit()) {
        best_ = selected;
        if (first_only_) done_ = true;
      }
      return;
    }

    // Blocks with pairwise disjoint candidate sets need disjoint actuators.
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& x, const Pending& y) { return x.deficit > y.deficit; });
    int packed = 0;
    Mask used = 0;
    for (const Pending& block : pending) {
      if ((block.candidates & used) == 0) {
        packed += block.deficit;
        used |= block.candidates;
      }
    }
    const int bound = std::max(max_deficit, packed);
    if (size + bound > current_limit()) return;

    // Branch on the free actuator appearing in the most open rows.
    std::vector<int> count(m_, 0);
    for (const Block& block : blocks_) {
      bool satisfied = false;
      for (Mask row : block.rows) {
        if ((row & excluded) == 0 && (row & ~selected) == 0) satisfied = true;
      }
      if (satisfied) continue;
      for (Mask row : block.rows) {
        if ((row & excluded) != 0) continue;
        for (Mask free = row & ~selected; free != 0; free &= free - 1) ++count[std::countr_zero(free)];
      }
    }
    int pivot = -1;
    for (int j = 0; j < m_; ++j) {
      if (count[j] > 0 && (pivot < 0 || count[j] > count[pivot])) pivot = j;
    }
    const Mask bit = Mask{1} << pivot;
    search(selected | bit, excluded);
    if (done_) return;
    search(selected, excluded | bit);
  }

  int current_limit() const {
    return best_ ? std::popcount(*best_) - 1 : limit_;
  }

  int m_;
  std::vector<Block> blocks_;
  std::optional<Mask> best_;
  int limit_ = 0;
  bool first_only_ = false;
  bool done_ = false;
};

}  // namespace

bool IlpBlock::satisfied_by(const IndexSet& chosen) const {
  return std::any_of(rows.begin(), rows.end(), [&](const IndexSet& row) {
    return std::includes(chosen.begin(), chosen.end(), row.begin(), row.end());
  });
}

void IlpModel::validate() const {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "negative actuator count");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const IlpBlock& block = blocks[b];
    for (const IndexSet& row : block.rows) {
      if (static_cast<int>(row.size()) != block.required) {
        throw Error(ErrorKind::InvalidInput,
                    "block " + std::to_string(b + 1) + ": row sum differs from required");
      }
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] < 0 || row[k] >= m || (k > 0 && row[k] <= row[k - 1])) {
          throw Error(ErrorKind::InvalidInput,
                      "block " + std::to_string(b + 1) + ": malformed row");
        }
      }
    }
  }
}

bool IlpModel::satisfied_by(const IndexSet& chosen) const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [&](const IlpBlock& block) { return block.satisfied_by(chosen); });
}

IlpModel build_model(const SelectionMatrices& sel) {
  IlpModel model;
  model.m = sel.m;
  for (const ModeSelection& mode : sel.per_mode) {
    if (mode.rows.empty()) throw Error(ErrorKind::InvalidInput, "selection matrix without rows");
    model.blocks.push_back({mode.required, mode.rows});
  }
  model.validate();
  return model;
}

IlpSolution solve_exact(const IlpModel& model) {
  model.validate();
  if (model.m > 64) {
    throw Error(ErrorKind::InstanceTooLarge,
                "branch and bound supports at most 64 actuators, got " + std::to_string(model.m));
  }
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    if (model.blocks[b].rows.empty()) {
      throw Error(ErrorKind::Infeasible, "block " + std::to_string(b + 1) + " has no rows");
    }
  }

  BranchAndBound bnb(model);
  const std::optional<Mask> first = bnb.solve(0, 0, model.m, /*first_only=*/false);
  if (!first) throw Error(ErrorKind::Infeasible, "selection program has no solution");
  const int optimum = std::popcount(*first);

  // Fix variables in index order, keeping y_j = 1 whenever an optimal
  // completion still exists; this yields the lexicographically smallest
  // optimal support.
  Mask selected = 0;
  Mask excluded = 0;
  for (int j = 0; j < model.m && std::popcount(selected) < optimum; ++j) {
    const Mask bit = Mask{1} << j;
    if (bnb.solve(selected | bit, excluded, optimum, /*first_only=*/true)) {
      selected |= bit;
    } else {
      excluded |= bit;
    }
  }
  IlpSolution solution{from_mask(selected), true};
  if (solution.cardinality() != optimum || !model.satisfied_by(solution.chosen)) {
    throw Error(ErrorKind::Infeasible, "canonical completion failed");
  }
  return solution;
}

IlpSolution solve_with_oracle(const IlpModel& model, int max_m) {
  model.validate();
  if (model.m > max_m) {
    throw Error(ErrorKind::InstanceTooLarge, "exhaustive ILP oracle limited to " +
                                                 std::to_string(max_m) + " actuators");
  }
  IlpSolution solution;
  for (int k = 0; k <= model.m; ++k) {
    const bool exhausted = for_each_combination(model.m, k, [&](const std::vector<int>& subset) {
      if (!model.satisfied_by(subset)) return true;
      solution.chosen = subset;
      return false;
    });
    if (!exhausted) return solution;
  }
  throw Error(ErrorKind::Infeasible, "selection program has no solution");
}

}  // namespace actsel
