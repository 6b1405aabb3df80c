#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "actsel/spectral.hpp"
#include "actsel/types.hpp"

namespace actsel {

enum class Strategy { Auto, Ilp, Multicover, Greedy, Brute };
enum class Method { IlpExact, MulticoverDp, MulticoverGreedy, BruteForce };

std::string_view to_string(Strategy strategy);
std::string_view to_string(Method method);
/// Throws InvalidInput for unknown names.
Strategy parse_strategy(std::string_view name);

/// Smallest relative PBH singular value sigma_n / sigma_1 of
/// [A - lambda I, B_{S \ F}] over all tested fault sets F.
struct ModeMargin {
  Complex lambda;
  double margin = 0.0;
};

struct PbhViolation {
  Complex lambda;
  IndexSet faults;
};

struct VerifyReport {
  bool passed = false;
  std::vector<ModeMargin> margins;
  std::optional<PbhViolation> violation;
};

struct SelectionResult {
  IndexSet chosen;
  Method method = Method::IlpExact;
  bool optimal = false;
  int fault_budget = 0;
  std::vector<ModeMargin> certificate;
  /// Set when the multicover path was used: the reduced instance's coverage.
  std::vector<int> coverage;

  int cardinality() const { return static_cast<int>(chosen.size()); }
};

struct FeasibilityReport {
  bool feasible = true;
  std::optional<int> violating_mode;  // 0-based index into dec.modes
};

struct SelectOptions {
  Strategy strategy = Strategy::Auto;
  Tolerances tol;
  Limits limits;
};

/// max_i g_i + f <= m.
FeasibilityReport feasibility(const SpectralDecomposition& dec, int f);

/// PBH test of B_{S \ F} for every F subset of S with |F| = min(f, |S|).
/// Throws FaultEnumerationTooLarge when C(|S|, f) exceeds limits.fault_sets.
VerifyReport verify(const LinearSystem& sys, const IndexSet& s, int f, const Tolerances& tol,
                    const Limits& limits = {});

/// Minimal f-fault-tolerant actuator set, routed through the multicover
/// reduction when its hypothesis is certified and the selection ILP
/// otherwise. The result is always re-verified before it is returned.
SelectionResult select(const LinearSystem& sys, int f, const SelectOptions& options = {});

/// Exhaustive reference: first S in (|S|, lexicographic) order passing
/// verify. Throws InstanceTooLarge above limits.brute_force_sets and
/// Uncontrollable when no subset works.
IndexSet brute_force_selection(const LinearSystem& sys, int f, const Tolerances& tol,
                               const Limits& limits = {});

}  // namespace actsel
