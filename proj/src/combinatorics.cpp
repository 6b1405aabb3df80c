#include "actsel/combinatorics.hpp"

namespace actsel {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    // result * factor / i stays integral at every step.
    if (result > kMax / factor) return kMax;
    result = result * factor / static_cast<std::uint64_t>(i);
  }
  return result;
}

double harmonic(int p) {
  double h = 0.0;
  for (int c = 1; c <= p; ++c) h += 1.0 / c;
  return h;
}

}  // namespace actsel
