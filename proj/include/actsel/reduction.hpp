#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "actsel/cover.hpp"
#include "actsel/spectral.hpp"
#include "actsel/types.hpp"

namespace actsel {

/// Binary selection matrix W^(i) for one mode, stored row-wise as supports.
/// Every row has exactly `required` entries; rows are sorted
/// lexicographically and distinct.
struct ModeSelection {
  int required = 0;
  std::vector<IndexSet> rows;

  /// Dense 0/1 form, rows x m.
  Eigen::MatrixXi dense(int m) const;
};

struct SelectionMatrices {
  int m = 0;
  int fault_budget = 0;
  std::vector<ModeSelection> per_mode;
};

/// Fault-free construction: for each mode, every g_i-subset S of actuators
/// with rank(B-bar[G_i, S]) = g_i becomes a row.
/// Throws Uncontrollable if some mode has no such subset and ModeTooLarge
/// when C(m, g_i) exceeds limits.enumeration.
SelectionMatrices build_nominal(const SpectralDecomposition& dec, const Tolerances& tol,
                                const Limits& limits = {});

/// Fault-tolerant construction: rows are the min(g_i + f, m)-subsets on
/// which B-bar[G_i, S] is a full spark frame. Throws Infeasible (naming the
/// mode) when g_i + f > m.
SelectionMatrices build_robust(const SpectralDecomposition& dec, int f, const Tolerances& tol,
                               const Limits& limits = {});

/// Nonzero column pattern T_i of B-bar[G_i, :] for mode i.
IndexSet support_columns(const SpectralDecomposition& dec, int i, const Tolerances& tol);

/// Returns T_1..T_p when every B-bar[G_i, T_i] is full spark with
/// |T_i| >= g_i + f, i.e. when the multicover reduction is exact.
std::optional<std::vector<IndexSet>> detect_spark_structure(const SpectralDecomposition& dec,
                                                            int f, const Tolerances& tol,
                                                            const Limits& limits = {});

/// R_j = {i : j in T_i}, b_i = g_i + f.
CoverInstance to_cover_instance(const SpectralDecomposition& dec,
                                const std::vector<IndexSet>& t_sets, int f);

/// Largest number of modes a single actuator appears for (the k of k-set
/// multicover).
int compute_k(const SelectionMatrices& sel);

}  // namespace actsel
