#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "actsel/types.hpp"

namespace actsel {

using Complex = std::complex<double>;

/// State-space pair (A, B) of x(t+1) = A x(t) + B u(t). Validated on
/// construction: A square, B with the same row count, n >= 1, m >= 1, all
/// entries finite.
class LinearSystem {
 public:
  LinearSystem(Eigen::MatrixXd a, Eigen::MatrixXd b);

  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::MatrixXd& b() const { return b_; }
  int n() const { return static_cast<int>(a_.rows()); }
  int m() const { return static_cast<int>(b_.cols()); }

  /// Columns of B indexed by `s` (0-based). Throws IndexOutOfRange.
  Eigen::MatrixXd input_columns(const IndexSet& s) const;

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
};

/// Numerical thresholds. All three must be strictly positive.
struct Tolerances {
  /// Eigenvalues closer than eig_cluster * max(1, ||A||_F) are merged.
  double eig_cluster = 1e-6;
  /// Singular values at or below rank_rel * sigma_max count as zero.
  double rank_rel = 1e-9;
  /// Accepted ||A - P J P^-1||_F / max(1, ||A||_F).
  double residual_max = 1e-8;

  void validate() const;
};

/// One distinct eigenvalue and its Jordan structure.
struct Mode {
  Complex lambda;
  int alg_mult = 0;
  int geo_mult = 0;
  /// Row indices of the zero rows of J - lambda I (bottom row of every Jordan
  /// block of lambda), 0-based, ascending.
  IndexSet zero_rows;
  /// Jordan block sizes, in the order the blocks appear in P.
  std::vector<int> block_sizes;
  /// For a retained representative of a complex-conjugate pair: index into
  /// SpectralDecomposition::spectrum of the dropped partner.
  std::optional<int> conjugate_of;
};

struct SpectralDecomposition {
  /// One entry per distinct eigenvalue of A (conjugates included), in the
  /// order their Jordan chains appear as columns of `transform`.
  std::vector<Mode> spectrum;
  /// Deduplicated modes: real eigenvalues plus the Im > 0 member of each
  /// conjugate pair. These are the p modes the selection works with.
  std::vector<Mode> modes;
  Eigen::MatrixXcd transform;          // P, A = P J P^-1
  Eigen::MatrixXcd transform_inverse;  // P^-1
  Eigen::MatrixXcd b_bar;              // P^-1 B
  double residual = 0.0;
  /// max_j ||b_j||, the column scale of the original B.
  double input_scale = 0.0;

  int p() const { return static_cast<int>(modes.size()); }
  int n() const { return static_cast<int>(transform.rows()); }
  int m() const { return static_cast<int>(b_bar.cols()); }

  /// Largest geometric multiplicity, G(A).
  int max_geo_mult() const;
  /// J assembled from `spectrum`.
  Eigen::MatrixXcd jordan_matrix() const;
  /// B-bar restricted to the zero rows of mode i (g_i x m).
  Eigen::MatrixXcd mode_rows(int i) const;
  /// Absolute threshold below which a column or singular value of
  /// mode_rows(i) is numerically zero: rank_rel * ||P^-1 rows|| * max||b_j||.
  double zero_floor(int i, const Tolerances& tol) const;
};

/// Singular-value rank rule. A singular value counts when it exceeds both
/// `relative * sigma_max` and `floor`.
struct RankRule {
  double relative = 1e-9;
  double floor = 0.0;
};

/// Distinct eigenvalues of `a` after clustering. Conjugate pairs are
/// reduced to their Im > 0 member; near-real clusters are snapped to the
/// real axis. Sorted by (real, imag).
std::vector<Complex> distinct_eigenvalues(const Eigen::MatrixXd& a,
                                          const Tolerances& tol);

/// Full Jordan analysis. Throws DecompositionFailed when the reconstruction
/// residual exceeds tol.residual_max or the chain structure is inconsistent.
SpectralDecomposition decompose(const LinearSystem& sys, const Tolerances& tol);

int rank_of(const Eigen::MatrixXcd& mat, const Tolerances& tol);
int rank_with(const Eigen::MatrixXcd& mat, const RankRule& rule);

/// True iff every g-column submatrix of the g x t matrix has rank g.
bool is_full_spark(const Eigen::MatrixXcd& mat, const Tolerances& tol);
bool is_full_spark_with(const Eigen::MatrixXcd& mat, const RankRule& rule);

/// PBH rank test of (A, B_s) at every distinct eigenvalue. Singular values
/// count when above rank_rel * max(sigma_1, ||A||_F); the ||A|| term keeps
/// A = lambda I (where A - lambda I is pure rounding noise) from passing with
/// too few inputs.
bool pbh_check(const LinearSystem& sys, const IndexSet& s,
               const Tolerances& tol);

/// PBH test against a precomputed eigenvalue list.
bool pbh_check_at(const LinearSystem& sys, const std::vector<Complex>& eigs,
                  const IndexSet& s, const Tolerances& tol);

/// sigma_n / max(sigma_1, ||A||_F) of [A - lambda I, B_s]. The PBH rank
/// condition at lambda holds iff this exceeds rank_rel.
double pbh_margin(const LinearSystem& sys, Complex lambda, const IndexSet& s);

}  // namespace actsel
