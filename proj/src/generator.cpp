#include "actsel/generator.hpp"

#include <algorithm>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "actsel/error.hpp"

namespace actsel {
namespace {

constexpr int kConditioningRetries = 200;

std::vector<int> block_sizes(int alg_mult, int geo_mult) {
  std::vector<int> sizes(geo_mult, alg_mult / geo_mult);
  for (int k = 0; k < alg_mult % geo_mult; ++k) ++sizes[k];
  return sizes;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double normal() { return normal_(rng_); }
  double uniform() { return uniform_(rng_); }
  Complex complex_normal() { return {normal(), normal()}; }
  int index(int count) { return std::uniform_int_distribution<int>(0, count - 1)(rng_); }
  // Bounded away from zero so a "nonzero" entry is never numerically tiny.
  double nonzero() {
    const double magnitude = 0.5 + uniform();
    return uniform() < 0.5 ? -magnitude : magnitude;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::vector<IndexSet> draw_patterns(const GeneratorSpec& spec, Sampler& rng) {
  const int m = spec.actuator_count();
  std::vector<bool> used(m, false);
  std::vector<IndexSet> patterns;
  for (int target : spec.actuators_per_mode) {
    IndexSet t;
    auto absent = [&](int j) { return std::find(t.begin(), t.end(), j) == t.end(); };
    while (static_cast<int>(t.size()) < target) {
      std::vector<int> reuse, fresh, any;
      for (int j = 0; j < m; ++j) {
        if (!absent(j)) continue;
        any.push_back(j);
        (used[j] ? reuse : fresh).push_back(j);
      }
      const std::vector<int>* pool = &any;
      if (!reuse.empty() && rng.uniform() < spec.overlap) {
        pool = &reuse;
      } else if (!fresh.empty()) {
        pool = &fresh;
      }
      const int j = (*pool)[rng.index(static_cast<int>(pool->size()))];
      t.push_back(j);
      used[j] = true;
    }
    std::sort(t.begin(), t.end());
    patterns.push_back(std::move(t));
  }
  return patterns;
}

double condition_number(const Eigen::MatrixXcd& mat) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  return smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
}

}  // namespace

int GeneratorSpec::n() const {
  int n = 0;
  for (const EigenvalueSpec& e : eigenvalues) n += (e.conjugate_pair ? 2 : 1) * e.alg_mult;
  return n;
}

int GeneratorSpec::actuator_count() const {
  if (m) return *m;
  int total = 0;
  for (int t : actuators_per_mode) total += t;
  return total;
}

void GeneratorSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::SpecError, what); };
  if (eigenvalues.empty()) fail("at least one eigenvalue is required");
  if (actuators_per_mode.size() != eigenvalues.size()) {
    fail("actuators_per_mode needs one entry per eigenvalue");
  }
  const int m_total = actuator_count();
  if (m_total < 1) fail("at least one actuator is required");
  int dependent_capable = 0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const EigenvalueSpec& e = eigenvalues[i];
    const std::string label = "eigenvalue " + std::to_string(i + 1);
    if (e.geo_mult < 1 || e.geo_mult > e.alg_mult) fail(label + ": need 1 <= g <= a");
    if (e.conjugate_pair && e.value.imag() == 0.0) fail(label + ": conjugate pair needs Im != 0");
    if (!e.conjugate_pair && e.value.imag() != 0.0) fail(label + ": complex value must be a conjugate pair");
    if (actuators_per_mode[i] < e.geo_mult) fail(label + ": |T_i| must be >= g_i");
    if (actuators_per_mode[i] > m_total) fail(label + ": |T_i| exceeds m");
    if (e.geo_mult >= 2) ++dependent_capable;
    for (std::size_t k = 0; k < i; ++k) {
      const Complex other = eigenvalues[k].value;
      if (other == e.value || (eigenvalues[k].conjugate_pair && std::conj(other) == e.value)) {
        fail(label + ": duplicate eigenvalue");
      }
    }
  }
  if (dependent_modes < 0 || dependent_modes > dependent_capable) {
    fail("dependent_modes exceeds the number of modes with g >= 2");
  }
  if (!(overlap >= 0.0 && overlap <= 1.0)) fail("overlap must lie in [0, 1]");
  if (!(conditioning >= 1.0)) fail("conditioning bound must be >= 1");
}

GeneratedSystem generate(const GeneratorSpec& spec) {
  spec.validate();
  const int n = spec.n();
  const int m = spec.actuator_count();
  Sampler rng(spec.seed);
  const std::vector<IndexSet> patterns = draw_patterns(spec, rng);

  // Column layout: per eigenvalue entry, its chains; a conjugate pair puts
  // the upper member's chains first and the conjugated copies right after.
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n, n);
  std::vector<int> first_column;  // per entry, start of the (upper) member
  std::vector<IndexSet> bottoms;  // per entry, block-bottom rows of the upper member
  {
    int offset = 0;
    for (const EigenvalueSpec& e : spec.eigenvalues) {
      first_column.push_back(offset);
      const std::vector<int> sizes = block_sizes(e.alg_mult, e.geo_mult);
      IndexSet rows;
      for (int member = 0; member < (e.conjugate_pair ? 2 : 1); ++member) {
        const Complex lambda = member == 0 ? e.value : std::conj(e.value);
        for (int size : sizes) {
          for (int r = 0; r < size; ++r) {
            j(offset + r, offset + r) = lambda;
            if (r + 1 < size) j(offset + r, offset + r + 1) = 1.0;
          }
          if (member == 0) rows.push_back(offset + size - 1);
          offset += size;
        }
      }
      bottoms.push_back(std::move(rows));
    }
  }

  Eigen::MatrixXcd p(n, n);
  bool conditioned = false;
  for (int attempt = 0; attempt < kConditioningRetries && !conditioned; ++attempt) {
    for (std::size_t e = 0; e < spec.eigenvalues.size(); ++e) {
      const EigenvalueSpec& eig = spec.eigenvalues[e];
      const int start = first_column[e];
      for (int c = 0; c < eig.alg_mult; ++c) {
        for (int r = 0; r < n; ++r) {
          p(r, start + c) = eig.conjugate_pair ? rng.complex_normal() : Complex(rng.normal(), 0.0);
        }
        if (eig.conjugate_pair) p.col(start + eig.alg_mult + c) = p.col(start + c).conjugate();
      }
    }
    conditioned = condition_number(p) <= spec.conditioning;
  }
  if (!conditioned) {
    throw Error(ErrorKind::ConditioningFailed,
                "no transform with cond(P) <= " + std::to_string(spec.conditioning) + " after " +
                    std::to_string(kConditioningRetries) + " draws");
  }

  // B-bar: arbitrary rows off the left-eigenvector positions, prescribed
  // zero pattern on them; conjugate members get conjugated rows.
  Eigen::MatrixXcd b_bar = Eigen::MatrixXcd::Zero(n, m);
  int dependent_left = spec.dependent_modes;
  for (std::size_t e = 0; e < spec.eigenvalues.size(); ++e) {
    const EigenvalueSpec& eig = spec.eigenvalues[e];
    const int start = first_column[e];
    for (int r = start; r < start + eig.alg_mult; ++r) {
      const bool bottom = std::find(bottoms[e].begin(), bottoms[e].end(), r) != bottoms[e].end();
      for (int c = 0; c < m; ++c) {
        const bool active = std::binary_search(patterns[e].begin(), patterns[e].end(), c);
        if (bottom && !active) continue;
        const Complex value = eig.conjugate_pair
                                  ? Complex(rng.nonzero(), rng.nonzero())
                                  : Complex(bottom ? rng.nonzero() : rng.normal(), 0.0);
        b_bar(r, c) = value;
      }
    }
    if (dependent_left > 0 && eig.geo_mult >= 2) {
      const int lead = patterns[e][0];
      const int follower = patterns[e][1];
      const double scale = rng.nonzero();
      for (int r : bottoms[e]) b_bar(r, follower) = scale * b_bar(r, lead);
      --dependent_left;
    }
    if (eig.conjugate_pair) {
      b_bar.middleRows(start + eig.alg_mult, eig.alg_mult) =
          b_bar.middleRows(start, eig.alg_mult).conjugate();
    }
  }

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(p);
  const Eigen::MatrixXcd a = p * j * lu.inverse();
  const Eigen::MatrixXcd b = p * b_bar;
  return GeneratedSystem{LinearSystem(a.real(), b.real()), patterns};
}

}  // namespace actsel
