#include "actsel/cover.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "actsel/combinatorics.hpp"
#include "actsel/error.hpp"

namespace actsel {
namespace {

void require_feasible(const CoverInstance& inst) {
  inst.validate();
  std::vector<int> available(inst.universe, 0);
  for (const IndexSet& set : inst.sets) {
    for (int i : set) ++available[i];
  }
  for (int i = 0; i < inst.universe; ++i) {
    if (available[i] < inst.coverage[i]) {
      throw Error(ErrorKind::InfeasibleCover,
                  "element " + std::to_string(i + 1) + " needs coverage " +
                      std::to_string(inst.coverage[i]) + " but only " +
                      std::to_string(available[i]) + " sets contain it");
    }
  }
}

}  // namespace

void CoverInstance::validate() const {
  if (universe < 0) throw Error(ErrorKind::InvalidInput, "negative universe size");
  if (static_cast<int>(coverage.size()) != universe) {
    throw Error(ErrorKind::InvalidInput, "coverage must list one requirement per element");
  }
  for (int b : coverage) {
    if (b < 1) throw Error(ErrorKind::InvalidInput, "coverage requirements must be >= 1");
  }
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const IndexSet& set = sets[j];
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (set[k] < 0 || set[k] >= universe) {
        throw Error(ErrorKind::InvalidInput,
                    "set " + std::to_string(j + 1) + " references element outside the universe");
      }
      if (k > 0 && set[k] <= set[k - 1]) {
        throw Error(ErrorKind::InvalidInput,
                    "set " + std::to_string(j + 1) + " is not strictly increasing");
      }
    }
  }
}

bool CoverInstance::feasible() const {
  std::vector<int> available(universe, 0);
  for (const IndexSet& set : sets) {
    for (int i : set) ++available[i];
  }
  for (int i = 0; i < universe; ++i) {
    if (available[i] < coverage[i]) return false;
  }
  return true;
}

bool CoverInstance::covered_by(const IndexSet& chosen) const {
  std::vector<int> hits(universe, 0);
  for (int j : chosen) {
    if (j < 0 || j >= set_count()) return false;
    for (int i : sets[j]) ++hits[i];
  }
  for (int i = 0; i < universe; ++i) {
    if (hits[i] < coverage[i]) return false;
  }
  return true;
}

int CoverInstance::max_set_size() const {
  int k = 0;
  for (const IndexSet& set : sets) k = std::max(k, static_cast<int>(set.size()));
  return k;
}

CoverSolution greedy_multicover(const CoverInstance& inst) {
  require_feasible(inst);
  std::vector<int> residual = inst.coverage;
  std::vector<bool> used(inst.sets.size(), false);
  int outstanding = 0;
  for (int r : residual) outstanding += r;

  CoverSolution solution;
  while (outstanding > 0) {
    int best = -1;
    int best_gain = 0;
    for (int j = 0; j < inst.set_count(); ++j) {
      if (used[j]) continue;
      int gain = 0;
      for (int i : inst.sets[j]) gain += residual[i] > 0 ? 1 : 0;
      if (gain > best_gain) {
        best = j;
        best_gain = gain;
      }
    }
    // Feasibility guarantees some unused set still hits a positive residual.
    used[best] = true;
    solution.chosen.push_back(best);
    for (int i : inst.sets[best]) {
      if (residual[i] > 0) {
        --residual[i];
        --outstanding;
      }
    }
  }
  std::sort(solution.chosen.begin(), solution.chosen.end());
  solution.optimal = false;
  return solution;
}

CoverSolution exact_multicover_dp(const CoverInstance& inst, std::uint64_t state_cap) {
  require_feasible(inst);
  const int p = inst.universe;
  const int m = inst.set_count();

  // Mixed-radix encoding of residual vectors r in prod_i {0..b_i}.
  std::vector<std::uint64_t> stride(p);
  std::uint64_t states = 1;
  for (int i = 0; i < p; ++i) {
    stride[i] = states;
    const auto radix = static_cast<std::uint64_t>(inst.coverage[i]) + 1;
    if (states > state_cap / radix) {
      throw Error(ErrorKind::StateSpaceTooLarge,
                  "multicover state space exceeds cap " + std::to_string(state_cap));
    }
    states *= radix;
  }
  if (states > state_cap) {
    throw Error(ErrorKind::StateSpaceTooLarge,
                "multicover state space exceeds cap " + std::to_string(state_cap));
  }
  std::uint64_t start = 0;
  for (int i = 0; i < p; ++i) start += stride[i] * static_cast<std::uint64_t>(inst.coverage[i]);

  auto step = [&](std::uint64_t r, int j) {
    std::uint64_t next = r;
    for (int i : inst.sets[j]) {
      const std::uint64_t digit = (r / stride[i]) % (static_cast<std::uint64_t>(inst.coverage[i]) + 1);
      if (digit > 0) next -= stride[i];
    }
    return next;
  };

  // cost[r] = fewest sets among j..m-1 that drive residual r to zero;
  // take[j][r] records whether set j is used on that optimal path. Taking
  // wins ties, so the forward walk yields the lexicographically smallest
  // optimum.
  constexpr std::uint16_t kInf = std::numeric_limits<std::uint16_t>::max();
  std::vector<std::uint16_t> cost(states, kInf), prev(states);
  cost[0] = 0;
  std::vector<std::vector<bool>> take(m, std::vector<bool>(states, false));
  for (int j = m - 1; j >= 0; --j) {
    prev.swap(cost);
    for (std::uint64_t r = 0; r < states; ++r) {
      std::uint16_t best = prev[r];
      const std::uint16_t via = prev[step(r, j)];
      if (via != kInf && static_cast<std::uint16_t>(via + 1) <= best) {
        best = static_cast<std::uint16_t>(via + 1);
        take[j][r] = true;
      }
      cost[r] = best;
    }
  }

  CoverSolution solution;
  std::uint64_t r = start;
  for (int j = 0; j < m && r != 0; ++j) {
    if (take[j][r]) {
      solution.chosen.push_back(j);
      r = step(r, j);
    }
  }
  solution.optimal = true;
  return solution;
}

CoverSolution brute_force_cover(const CoverInstance& inst, int max_sets) {
  const int m = inst.set_count();
  if (m > max_sets) {
    throw Error(ErrorKind::InstanceTooLarge, "brute-force cover limited to " +
                                                 std::to_string(max_sets) + " sets, got " +
                                                 std::to_string(m));
  }
  require_feasible(inst);
  CoverSolution solution;
  solution.optimal = true;
  for (int k = 0; k <= m; ++k) {
    const bool exhausted = for_each_combination(m, k, [&](const std::vector<int>& subset) {
      if (!inst.covered_by(subset)) return true;
      solution.chosen = subset;
      return false;
    });
    if (!exhausted) return solution;
  }
  // Unreachable after the feasibility check: all sets together cover.
  throw Error(ErrorKind::InfeasibleCover, "no covering subset");
}

}  // namespace actsel
