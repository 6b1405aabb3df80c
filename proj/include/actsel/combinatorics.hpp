#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace actsel {

/// Binomial coefficient, saturating at uint64 max.
std::uint64_t binomial(int n, int k);

/// Calls `fn(const std::vector<int>&)` for every k-subset of {0..n-1} in
/// lexicographic order. `fn` returns false to stop early. Returns false iff
/// stopped early.
template <typename Fn>
bool for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(idx))) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// p-th harmonic number H(p) = sum_{c=1}^p 1/c; H(0) = 0.
double harmonic(int p);

}  // namespace actsel
