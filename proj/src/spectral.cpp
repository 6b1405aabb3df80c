#include "actsel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "actsel/combinatorics.hpp"
#include "actsel/error.hpp"

namespace actsel {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

bool all_finite(const MatrixXd& m) { return m.allFinite(); }

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

Eigen::VectorXd singular_values(const MatrixXcd& mat) {
  if (mat.rows() == 0 || mat.cols() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<MatrixXcd> svd(mat);
  return svd.singularValues();
}

// Orthonormal basis of {x : M x = 0}, singular values <= threshold count as 0.
MatrixXcd null_space(const MatrixXcd& mat, double threshold) {
  const Eigen::Index cols = mat.cols();
  Eigen::JacobiSVD<MatrixXcd> svd(mat, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

// Orthonormal basis of the column span of `mat`.
MatrixXcd orth(const MatrixXcd& mat, double relative) {
  if (mat.cols() == 0) return MatrixXcd(mat.rows(), 0);
  Eigen::JacobiSVD<MatrixXcd> svd(mat, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = sv.size() > 0 ? relative * sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

MatrixXcd hstack(const MatrixXcd& left, const MatrixXcd& right) {
  MatrixXcd out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

struct Cluster {
  Complex center;
  int size = 0;
  int partner = -1;  // index of the conjugate cluster, if any
};

// Groups the numerically computed spectrum of `a` into distinct eigenvalues
// and pairs conjugates. Output sorted by (real, imag).
std::vector<Cluster> cluster_spectrum(const MatrixXd& a, const Tolerances& tol) {
  Eigen::EigenSolver<MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::DecompositionFailed, "eigenvalue iteration did not converge");
  }
  const Eigen::VectorXcd ev = solver.eigenvalues();
  const int n = static_cast<int>(ev.size());
  const double radius = tol.eig_cluster * std::max(1.0, a.norm());

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(ev(i) - ev(j)) <= radius) parent[find(i)] = find(j);
    }
  }

  std::vector<int> root_slot(n, -1);
  std::vector<Cluster> clusters;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_slot[r] < 0) {
      root_slot[r] = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    Cluster& c = clusters[root_slot[r]];
    c.center += ev(i);
    ++c.size;
  }
  for (Cluster& c : clusters) {
    c.center /= static_cast<double>(c.size);
    if (std::abs(c.center.imag()) <= radius) c.center = {c.center.real(), 0.0};
  }

  // A real matrix has a conjugate-symmetric spectrum; pair upper with lower.
  for (std::size_t u = 0; u < clusters.size(); ++u) {
    if (clusters[u].center.imag() <= 0.0) continue;
    int best = -1;
    double best_dist = 0.0;
    for (std::size_t l = 0; l < clusters.size(); ++l) {
      if (clusters[l].center.imag() >= 0.0 || clusters[l].partner >= 0) continue;
      if (clusters[l].size != clusters[u].size) continue;
      const double d = std::abs(clusters[u].center - std::conj(clusters[l].center));
      if (best < 0 || d < best_dist) {
        best = static_cast<int>(l);
        best_dist = d;
      }
    }
    if (best < 0 || best_dist > radius) {
      throw Error(ErrorKind::DecompositionFailed,
                  "no conjugate partner for eigenvalue " + format_complex(clusters[u].center));
    }
    const Complex merged = 0.5 * (clusters[u].center + std::conj(clusters[best].center));
    clusters[u].center = merged;
    clusters[best].center = std::conj(merged);
    clusters[u].partner = best;
    clusters[best].partner = static_cast<int>(u);
  }
  for (const Cluster& c : clusters) {
    if (c.center.imag() < 0.0 && c.partner < 0) {
      throw Error(ErrorKind::DecompositionFailed,
                  "no conjugate partner for eigenvalue " + format_complex(c.center));
    }
  }

  std::vector<int> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const Complex a_ = clusters[x].center, b_ = clusters[y].center;
    if (a_.real() != b_.real()) return a_.real() < b_.real();
    return a_.imag() < b_.imag();
  });
  std::vector<int> new_index(clusters.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_index[order[k]] = static_cast<int>(k);
  std::vector<Cluster> sorted;
  sorted.reserve(clusters.size());
  for (int idx : order) {
    Cluster c = clusters[idx];
    if (c.partner >= 0) c.partner = new_index[c.partner];
    sorted.push_back(c);
  }
  return sorted;
}

// Jordan chains of one eigenvalue: each chain is stored as its columns
// p_1 (eigenvector) ... p_L (chain head), so that A p_j = lambda p_j + p_{j-1}.
using Chain = std::vector<VectorXcd>;

std::vector<Chain> jordan_chains(const MatrixXd& a, Complex lambda, int alg_mult,
                                 const Tolerances& tol) {
  const int n = static_cast<int>(a.rows());
  const MatrixXcd nil = a.cast<Complex>() - lambda * MatrixXcd::Identity(n, n);
  const Eigen::VectorXd nil_sv = singular_values(nil);
  // Scale by ||A|| as well: when A = lambda I up to rounding, N is pure noise
  // and a threshold relative to N alone would call it full rank.
  const double threshold =
      tol.rank_rel * std::max(nil_sv.size() > 0 ? nil_sv(0) : 0.0, a.norm());

  // kernels[k] spans ker(N^k), built as {x : N x in ker(N^{k-1})}.
  std::vector<MatrixXcd> kernels{MatrixXcd(n, 0)};
  while (true) {
    const MatrixXcd& prev = kernels.back();
    const MatrixXcd projected =
        (MatrixXcd::Identity(n, n) - prev * prev.adjoint()) * nil;
    MatrixXcd next = null_space(projected, threshold);
    if (next.cols() <= prev.cols()) break;
    if (next.cols() > alg_mult) {
      throw Error(ErrorKind::DecompositionFailed,
                  "generalized eigenspace of " + format_complex(lambda) +
                      " exceeds algebraic multiplicity " + std::to_string(alg_mult));
    }
    kernels.push_back(std::move(next));
  }
  const int depth = static_cast<int>(kernels.size()) - 1;
  if (depth == 0 || kernels.back().cols() != alg_mult) {
    throw Error(ErrorKind::DecompositionFailed,
                "generalized eigenspace of " + format_complex(lambda) + " has dimension " +
                    std::to_string(kernels.back().cols()) + ", expected " +
                    std::to_string(alg_mult));
  }

  // growth[k] = number of Jordan blocks of size >= k.
  std::vector<int> growth(depth + 2, 0);
  for (int k = 1; k <= depth; ++k) {
    growth[k] = static_cast<int>(kernels[k].cols() - kernels[k - 1].cols());
  }

  std::vector<VectorXcd> heads;
  std::vector<int> lengths;
  std::vector<VectorXcd> level;  // current vector of each chain at level k
  for (int k = depth; k >= 1; --k) {
    const int fresh = growth[k] - growth[k + 1];
    if (fresh < 0) {
      throw Error(ErrorKind::DecompositionFailed,
                  "inconsistent Jordan structure at " + format_complex(lambda));
    }
    if (fresh > 0) {
      MatrixXcd taken(n, static_cast<Eigen::Index>(level.size()));
      for (std::size_t c = 0; c < level.size(); ++c) taken.col(c) = level[c];
      const MatrixXcd q = orth(hstack(kernels[k - 1], taken), tol.rank_rel);
      const MatrixXcd residual_part =
          (MatrixXcd::Identity(n, n) - q * q.adjoint()) * kernels[k];
      Eigen::JacobiSVD<MatrixXcd> svd(residual_part, Eigen::ComputeThinU);
      if (svd.singularValues().size() < fresh ||
          svd.singularValues()(fresh - 1) <= tol.rank_rel) {
        throw Error(ErrorKind::DecompositionFailed,
                    "cannot extend Jordan chains of " + format_complex(lambda));
      }
      for (int c = 0; c < fresh; ++c) {
        heads.push_back(svd.matrixU().col(c));
        lengths.push_back(k);
        level.push_back(svd.matrixU().col(c));
      }
    }
    for (VectorXcd& v : level) v = nil * v;
  }

  std::vector<Chain> chains;
  for (std::size_t c = 0; c < heads.size(); ++c) {
    Chain chain(lengths[c]);
    VectorXcd v = heads[c];
    for (int j = lengths[c] - 1; j >= 0; --j) {
      chain[j] = v;
      v = nil * v;
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

}  // namespace

LinearSystem::LinearSystem(Eigen::MatrixXd a, Eigen::MatrixXd b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() < 1 || a_.rows() != a_.cols()) {
    throw Error(ErrorKind::InvalidInput, "A must be a non-empty square matrix");
  }
  if (b_.rows() != a_.rows() || b_.cols() < 1) {
    throw Error(ErrorKind::InvalidInput,
                "B must have n = " + std::to_string(a_.rows()) + " rows and at least one column");
  }
  if (!all_finite(a_) || !all_finite(b_)) {
    throw Error(ErrorKind::InvalidInput, "A and B must have finite entries");
  }
}

Eigen::MatrixXd LinearSystem::input_columns(const IndexSet& s) const {
  Eigen::MatrixXd out(n(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0 || s[k] >= m()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "actuator index " + std::to_string(s[k] + 1) + " outside 1.." +
                      std::to_string(m()));
    }
    out.col(static_cast<Eigen::Index>(k)) = b_.col(s[k]);
  }
  return out;
}

void Tolerances::validate() const {
  for (double v : {eig_cluster, rank_rel, residual_max}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidInput, "tolerances must be finite and strictly positive");
    }
  }
}

int SpectralDecomposition::max_geo_mult() const {
  int g = 0;
  for (const Mode& mode : modes) g = std::max(g, mode.geo_mult);
  return g;
}

Eigen::MatrixXcd SpectralDecomposition::jordan_matrix() const {
  const int size = n();
  MatrixXcd j = MatrixXcd::Zero(size, size);
  int offset = 0;
  for (const Mode& mode : spectrum) {
    for (int block : mode.block_sizes) {
      for (int r = 0; r < block; ++r) {
        j(offset + r, offset + r) = mode.lambda;
        if (r + 1 < block) j(offset + r, offset + r + 1) = 1.0;
      }
      offset += block;
    }
  }
  return j;
}

Eigen::MatrixXcd SpectralDecomposition::mode_rows(int i) const {
  const Mode& mode = modes.at(static_cast<std::size_t>(i));
  MatrixXcd out(static_cast<Eigen::Index>(mode.zero_rows.size()), b_bar.cols());
  for (std::size_t r = 0; r < mode.zero_rows.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = b_bar.row(mode.zero_rows[r]);
  }
  return out;
}

double SpectralDecomposition::zero_floor(int i, const Tolerances& tol) const {
  const Mode& mode = modes.at(static_cast<std::size_t>(i));
  MatrixXcd left(static_cast<Eigen::Index>(mode.zero_rows.size()), transform_inverse.cols());
  for (std::size_t r = 0; r < mode.zero_rows.size(); ++r) {
    left.row(static_cast<Eigen::Index>(r)) = transform_inverse.row(mode.zero_rows[r]);
  }
  const Eigen::VectorXd sv = singular_values(left);
  const double left_norm = sv.size() > 0 ? sv(0) : 0.0;
  return tol.rank_rel * left_norm * input_scale;
}

std::vector<Complex> distinct_eigenvalues(const Eigen::MatrixXd& a, const Tolerances& tol) {
  tol.validate();
  std::vector<Complex> out;
  for (const Cluster& c : cluster_spectrum(a, tol)) {
    if (c.center.imag() >= 0.0) out.push_back(c.center);
  }
  return out;
}

SpectralDecomposition decompose(const LinearSystem& sys, const Tolerances& tol) {
  tol.validate();
  const MatrixXd& a = sys.a();
  const int n = sys.n();
  const std::vector<Cluster> clusters = cluster_spectrum(a, tol);

  // Chains are computed for real and upper-half-plane clusters; the lower
  // partner reuses the conjugated chains so that P^-1 B has conjugate rows.
  std::vector<std::vector<Chain>> chains(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].center.imag() >= 0.0) {
      chains[c] = jordan_chains(a, clusters[c].center, clusters[c].size, tol);
    }
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].center.imag() < 0.0) {
      for (const Chain& upper : chains[clusters[c].partner]) {
        Chain lower;
        for (const VectorXcd& v : upper) lower.push_back(v.conjugate());
        chains[c].push_back(std::move(lower));
      }
    }
  }

  SpectralDecomposition dec;
  dec.transform.resize(n, n);
  int column = 0;
  std::vector<int> spectrum_of_cluster(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    Mode mode;
    mode.lambda = clusters[c].center;
    mode.alg_mult = clusters[c].size;
    mode.geo_mult = static_cast<int>(chains[c].size());
    for (const Chain& chain : chains[c]) {
      for (const VectorXcd& v : chain) dec.transform.col(column++) = v;
      mode.zero_rows.push_back(column - 1);
      mode.block_sizes.push_back(static_cast<int>(chain.size()));
    }
    spectrum_of_cluster[c] = static_cast<int>(dec.spectrum.size());
    dec.spectrum.push_back(std::move(mode));
  }
  if (column != n) {
    throw Error(ErrorKind::DecompositionFailed, "Jordan chains do not span the state space");
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].center.imag() < 0.0) continue;
    Mode mode = dec.spectrum[spectrum_of_cluster[c]];
    if (clusters[c].partner >= 0) mode.conjugate_of = spectrum_of_cluster[clusters[c].partner];
    dec.modes.push_back(std::move(mode));
  }

  Eigen::FullPivLU<MatrixXcd> lu(dec.transform);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::DecompositionFailed, "Jordan basis is numerically singular");
  }
  dec.transform_inverse = lu.inverse();
  const MatrixXcd reconstructed =
      dec.transform * dec.jordan_matrix() * dec.transform_inverse;
  dec.residual = (a.cast<Complex>() - reconstructed).norm() / std::max(1.0, a.norm());
  if (!(dec.residual <= tol.residual_max)) {
    std::ostringstream os;
    os << "Jordan reconstruction residual " << dec.residual << " exceeds "
       << tol.residual_max;
    throw Error(ErrorKind::DecompositionFailed, os.str());
  }
  dec.b_bar = dec.transform_inverse * sys.b().cast<Complex>();
  dec.input_scale = sys.b().colwise().norm().maxCoeff();
  return dec;
}

int rank_with(const Eigen::MatrixXcd& mat, const RankRule& rule) {
  if (!mat.allFinite()) throw Error(ErrorKind::InvalidInput, "matrix has non-finite entries");
  const Eigen::VectorXd sv = singular_values(mat);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = std::max(rule.relative * sv(0), rule.floor);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

int rank_of(const Eigen::MatrixXcd& mat, const Tolerances& tol) {
  return rank_with(mat, RankRule{tol.rank_rel, 0.0});
}

bool is_full_spark_with(const Eigen::MatrixXcd& mat, const RankRule& rule) {
  const int g = static_cast<int>(mat.rows());
  const int t = static_cast<int>(mat.cols());
  if (g < 1 || t < g) {
    throw Error(ErrorKind::InvalidShape, "full-spark test needs t >= g >= 1, got g = " +
                                             std::to_string(g) + ", t = " + std::to_string(t));
  }
  MatrixXcd sub(g, g);
  return for_each_combination(t, g, [&](const std::vector<int>& cols) {
    for (int k = 0; k < g; ++k) sub.col(k) = mat.col(cols[k]);
    return rank_with(sub, rule) == g;
  });
}

bool is_full_spark(const Eigen::MatrixXcd& mat, const Tolerances& tol) {
  return is_full_spark_with(mat, RankRule{tol.rank_rel, 0.0});
}

namespace {

MatrixXcd pbh_matrix(const LinearSystem& sys, Complex lambda, const IndexSet& s) {
  const int n = sys.n();
  MatrixXcd mat(n, n + static_cast<Eigen::Index>(s.size()));
  mat.leftCols(n) = sys.a().cast<Complex>() - lambda * MatrixXcd::Identity(n, n);
  mat.rightCols(static_cast<Eigen::Index>(s.size())) = sys.input_columns(s).cast<Complex>();
  return mat;
}

}  // namespace

bool pbh_check_at(const LinearSystem& sys, const std::vector<Complex>& eigs,
                  const IndexSet& s, const Tolerances& tol) {
  for (Complex lambda : eigs) {
    const RankRule rule{tol.rank_rel, tol.rank_rel * sys.a().norm()};
    if (rank_with(pbh_matrix(sys, lambda, s), rule) != sys.n()) return false;
  }
  return true;
}

bool pbh_check(const LinearSystem& sys, const IndexSet& s, const Tolerances& tol) {
  sys.input_columns(s);  // range check before the eigenvalue work
  return pbh_check_at(sys, distinct_eigenvalues(sys.a(), tol), s, tol);
}

double pbh_margin(const LinearSystem& sys, Complex lambda, const IndexSet& s) {
  const Eigen::VectorXd sv = singular_values(pbh_matrix(sys, lambda, s));
  const double scale = std::max(sv.size() > 0 ? sv(0) : 0.0, sys.a().norm());
  if (scale == 0.0) return 0.0;
  return sv(sv.size() - 1) / scale;
}

}  // namespace actsel
