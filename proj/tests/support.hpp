#pragma once

// Shared fixtures and independent reference computations for the tests. The
// reference routines deliberately use only brute-force enumeration so they
// cannot share a bug with the library paths they check.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "robinson/dissimilarity.hpp"

namespace testsupport {

using robinson::Dissimilarity;
using robinson::TotalOrder;

/// Four points with pairwise values (01,02,03,12,13,23) = (1,2,3,4,2,1).
/// Not Robinsonian; the exact optimum is 0.5 at witness (1,0,3,2).
inline Dissimilarity sample4() {
  return Dissimilarity::from_upper(4, std::vector<double>{1, 2, 3, 4, 2, 1});
}

inline Dissimilarity line_distance(int n) {
  Dissimilarity d(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.set(i, j, j - i);
  return d;
}

/// Reference violation: enumerate every nested quadruple directly,
/// degenerate coincidences at both ends included.
inline double brute_violation(const Dissimilarity& d,
                              const std::vector<int>& seq) {
  const int k = static_cast<int>(seq.size());
  double worst = 0.0;
  for (int x = 0; x < k; ++x)
    for (int u = x; u < k; ++u)
      for (int v = u; v < k; ++v)
        for (int y = v; y < k; ++y)
          worst = std::max(worst, d(seq[u], seq[v]) - d(seq[x], seq[y]));
  return 0.5 * worst;
}

/// All permutations of {0..n-1}.
template <typename Visit>
void every_order(int n, Visit visit) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    visit(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

/// Deterministic PRNG for test data.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  int below(int n) { return static_cast<int>(next() % n); }
};

/// Random integer-valued dissimilarity on a small grid.
inline Dissimilarity random_matrix(int n, Rng& rng, int levels = 8) {
  Dissimilarity d(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.set(i, j, rng.below(levels) + 1);
  return d;
}

}  // namespace testsupport
