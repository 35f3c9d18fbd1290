#pragma once

#include <cstdint>

#include "robinson/dissimilarity.hpp"

namespace robinson {

/// Exact optimum over all total orders, found by enumeration. Only for desk
/// sizes; the calls enforce n <= 9.
struct OracleResult {
  double epsilon_star = 0.0;
  TotalOrder witness;
};

OracleResult exact_fit(const Dissimilarity& d);

/// True iff some order is eps-compatible with d, i.e. eps >= epsilon_star.
bool is_eps_robinsonian(const Dissimilarity& d, double eps);

/// A matrix that is exactly Robinsonian under a hidden order, produced by
/// taking the nested max of a noisy line profile and relabeling. Values live
/// on an integer grid so downstream comparisons stay exact.
struct PlantedInstance {
  Dissimilarity d;
  TotalOrder hidden;
};

PlantedInstance gen_robinson(int n, std::uint64_t seed);

/// Adds symmetric uniform noise bounded by eta to every off-diagonal entry,
/// floored at zero. Noise values sit on a dyadic grid, so the optimum of the
/// perturbed matrix stays an exact double and never exceeds eta.
Dissimilarity perturb(const Dissimilarity& d, double eta, std::uint64_t seed);

}  // namespace robinson
