#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "actsel/spectral.hpp"
#include "actsel/types.hpp"

namespace actsel {

/// One distinct eigenvalue (or conjugate pair) of the generated A.
struct EigenvalueSpec {
  Complex value;
  /// When true, value and conj(value) are both eigenvalues with the same
  /// Jordan structure; value must have a nonzero imaginary part.
  bool conjugate_pair = false;
  int alg_mult = 1;
  int geo_mult = 1;
};

/// Recipe for a random system with prescribed Jordan structure and actuator
/// pattern: A = P J P^-1 with a random P of bounded condition number, and B
/// such that P^-1 B has continuous random entries on the columns T_i and
/// zeros elsewhere in the rows of each mode's left eigenvectors.
struct GeneratorSpec {
  std::vector<EigenvalueSpec> eigenvalues;
  std::vector<int> actuators_per_mode;  // |T_i|, one per eigenvalue entry
  std::optional<int> m;                 // defaults to sum of |T_i|
  double overlap = 0.0;                 // probability of reusing an actuator
  std::uint64_t seed = 0;
  double conditioning = 1e3;            // bound on cond(P)
  /// Number of modes (with g_i >= 2) whose T_i block gets two proportional
  /// columns, breaking the full-spark structure on purpose.
  int dependent_modes = 0;

  int n() const;
  int actuator_count() const;
  /// Throws SpecError on inconsistent multiplicities or sizes.
  void validate() const;
};

struct GeneratedSystem {
  LinearSystem system;
  std::vector<IndexSet> t_sets;  // prescribed pattern per eigenvalue entry, in spec order
};

/// Throws SpecError for invalid specs and ConditioningFailed when no
/// transform within the conditioning bound is found after bounded retries.
GeneratedSystem generate(const GeneratorSpec& spec);

}  // namespace actsel
