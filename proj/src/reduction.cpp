#include "actsel/reduction.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "actsel/combinatorics.hpp"
#include "actsel/error.hpp"

namespace actsel {
namespace {

std::string mode_label(const SpectralDecomposition& dec, int i) {
  const Complex z = dec.modes[i].lambda;
  std::string label = "mode " + std::to_string(i + 1) + " (lambda = " + std::to_string(z.real());
  if (z.imag() != 0.0) label += (z.imag() > 0 ? "+" : "-") + std::to_string(std::abs(z.imag())) + "i";
  return label + ")";
}

void check_budget(const SpectralDecomposition& dec, int i, int size, const Limits& limits) {
  const std::uint64_t count = binomial(dec.m(), size);
  if (count > limits.enumeration) {
    throw Error(ErrorKind::ModeTooLarge,
                mode_label(dec, i) + ": C(" + std::to_string(dec.m()) + ", " +
                    std::to_string(size) + ") subsets exceed enumeration cap " +
                    std::to_string(limits.enumeration));
  }
}

Eigen::MatrixXcd columns(const Eigen::MatrixXcd& mat, const std::vector<int>& cols) {
  Eigen::MatrixXcd out(mat.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = mat.col(cols[k]);
  return out;
}

// Enumerates size-`size` subsets of the nonzero columns of mode i and keeps
// those accepted by `accept`. Zero columns can never take part in a
// full-rank or full-spark subset, so skipping them does not change the rows.
template <typename Accept>
ModeSelection enumerate_rows(const SpectralDecomposition& dec, int i, int size,
                             const Tolerances& tol, Accept&& accept) {
  const Eigen::MatrixXcd rows = dec.mode_rows(i);
  const IndexSet support = support_columns(dec, i, tol);
  const RankRule rule{tol.rank_rel, dec.zero_floor(i, tol)};

  ModeSelection sel;
  sel.required = size;
  for_each_combination(static_cast<int>(support.size()), size, [&](const std::vector<int>& pick) {
    IndexSet subset(pick.size());
    for (std::size_t k = 0; k < pick.size(); ++k) subset[k] = support[pick[k]];
    if (accept(columns(rows, subset), rule)) sel.rows.push_back(std::move(subset));
    return true;
  });
  // Lexicographic order follows from enumerating an ascending support.
  if (std::set<IndexSet>(sel.rows.begin(), sel.rows.end()).size() != sel.rows.size()) {
    throw Error(ErrorKind::InvalidInput, "duplicate selection rows");
  }
  return sel;
}

}  // namespace

Eigen::MatrixXi ModeSelection::dense(int m) const {
  Eigen::MatrixXi w = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int j : rows[r]) w(static_cast<Eigen::Index>(r), j) = 1;
  }
  return w;
}

IndexSet support_columns(const SpectralDecomposition& dec, int i, const Tolerances& tol) {
  const Eigen::MatrixXcd rows = dec.mode_rows(i);
  const Eigen::VectorXd norms = rows.colwise().norm();
  const double cut = std::max(tol.rank_rel * norms.maxCoeff(), dec.zero_floor(i, tol));
  IndexSet support;
  for (int j = 0; j < dec.m(); ++j) {
    if (norms(j) > cut) support.push_back(j);
  }
  return support;
}

SelectionMatrices build_nominal(const SpectralDecomposition& dec, const Tolerances& tol,
                                const Limits& limits) {
  SelectionMatrices sel;
  sel.m = dec.m();
  sel.fault_budget = 0;
  for (int i = 0; i < dec.p(); ++i) {
    const int g = dec.modes[i].geo_mult;
    check_budget(dec, i, g, limits);
    ModeSelection mode = enumerate_rows(dec, i, g, tol, [g](const Eigen::MatrixXcd& sub, const RankRule& rule) {
      return rank_with(sub, rule) == g;
    });
    if (mode.rows.empty()) {
      throw Error(ErrorKind::Uncontrollable,
                  mode_label(dec, i) + " cannot be controlled: no " + std::to_string(g) +
                      " actuators span its left eigenspace");
    }
    sel.per_mode.push_back(std::move(mode));
  }
  return sel;
}

SelectionMatrices build_robust(const SpectralDecomposition& dec, int f, const Tolerances& tol,
                               const Limits& limits) {
  if (f < 0) throw Error(ErrorKind::InvalidInput, "fault budget must be nonnegative");
  for (int i = 0; i < dec.p(); ++i) {
    const int g = dec.modes[i].geo_mult;
    if (g + f > dec.m()) {
      throw Error(ErrorKind::Infeasible,
                  mode_label(dec, i) + ": g_i + f = " + std::to_string(g) + " + " +
                      std::to_string(f) + " exceeds m = " + std::to_string(dec.m()));
    }
  }
  SelectionMatrices sel;
  sel.m = dec.m();
  sel.fault_budget = f;
  for (int i = 0; i < dec.p(); ++i) {
    const int size = std::min(dec.modes[i].geo_mult + f, dec.m());
    check_budget(dec, i, size, limits);
    ModeSelection mode = enumerate_rows(dec, i, size, tol, [](const Eigen::MatrixXcd& sub, const RankRule& rule) {
      return is_full_spark_with(sub, rule);
    });
    if (mode.rows.empty()) {
      throw Error(ErrorKind::Uncontrollable,
                  mode_label(dec, i) + " admits no full-spark actuator subset of size " +
                      std::to_string(size));
    }
    sel.per_mode.push_back(std::move(mode));
  }
  return sel;
}

std::optional<std::vector<IndexSet>> detect_spark_structure(const SpectralDecomposition& dec,
                                                            int f, const Tolerances& tol,
                                                            const Limits& limits) {
  if (f < 0) throw Error(ErrorKind::InvalidInput, "fault budget must be nonnegative");
  std::vector<IndexSet> t_sets;
  for (int i = 0; i < dec.p(); ++i) {
    const int g = dec.modes[i].geo_mult;
    IndexSet t = support_columns(dec, i, tol);
    if (static_cast<int>(t.size()) < g + f) return std::nullopt;
    if (binomial(static_cast<int>(t.size()), g) > limits.enumeration) {
      throw Error(ErrorKind::ModeTooLarge, mode_label(dec, i) + ": full-spark check exceeds enumeration cap");
    }
    const RankRule rule{tol.rank_rel, dec.zero_floor(i, tol)};
    if (!is_full_spark_with(columns(dec.mode_rows(i), t), rule)) return std::nullopt;
    t_sets.push_back(std::move(t));
  }
  return t_sets;
}

CoverInstance to_cover_instance(const SpectralDecomposition& dec,
                                const std::vector<IndexSet>& t_sets, int f) {
  if (static_cast<int>(t_sets.size()) != dec.p()) {
    throw Error(ErrorKind::InvalidInput, "need one T_i per mode");
  }
  CoverInstance inst;
  inst.universe = dec.p();
  inst.sets.assign(dec.m(), {});
  for (int i = 0; i < dec.p(); ++i) {
    inst.coverage.push_back(dec.modes[i].geo_mult + f);
    for (int j : t_sets[i]) inst.sets.at(j).push_back(i);
  }
  return inst;
}

int compute_k(const SelectionMatrices& sel) {
  std::vector<int> modes_per_actuator(sel.m, 0);
  for (const ModeSelection& mode : sel.per_mode) {
    std::vector<bool> touched(sel.m, false);
    for (const IndexSet& row : mode.rows) {
      for (int j : row) touched[j] = true;
    }
    for (int j = 0; j < sel.m; ++j) modes_per_actuator[j] += touched[j] ? 1 : 0;
  }
  return sel.m == 0 ? 0 : *std::max_element(modes_per_actuator.begin(), modes_per_actuator.end());
}

}  // namespace actsel
