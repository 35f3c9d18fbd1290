#include "robinson/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace robinson {

namespace {

constexpr int kMaxOracleSize = 9;

void check_size(const Dissimilarity& d) {
  if (d.size() > kMaxOracleSize)
    throw std::invalid_argument("oracle: enumeration limited to n <= 9");
}

// Walk all orders modulo reversal: keep representatives with front < back.
template <typename Visit>
void for_each_order(int n, Visit visit) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    if (n > 1 && perm.front() > perm.back()) continue;
    if (visit(perm)) return;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

OracleResult exact_fit(const Dissimilarity& d) {
  check_size(d);
  OracleResult best;
  best.epsilon_star = -1.0;
  for_each_order(d.size(), [&](const std::vector<int>& perm) {
    double v = sequence_violation(d, perm);
    if (best.epsilon_star < 0.0 || v < best.epsilon_star) {
      best.epsilon_star = v;
      best.witness.perm = perm;
    }
    return false;
  });
  return best;
}

bool is_eps_robinsonian(const Dissimilarity& d, double eps) {
  check_size(d);
  bool found = false;
  for_each_order(d.size(), [&](const std::vector<int>& perm) {
    if (sequence_violation(d, perm) <= eps) {
      found = true;
      return true;
    }
    return false;
  });
  return found;
}

PlantedInstance gen_robinson(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_robinson: n must be >= 1");
  std::mt19937_64 rng(seed);
  // Noisy integer line profile, then the nested max under the identity
  // order, which is Robinsonian by construction.
  Dissimilarity raw(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 2.0 * (j - i) + static_cast<double>(rng() % (2 * n));
      raw.set(i, j, v);
    }
  Dissimilarity profile = subinterval_max(raw, TotalOrder::identity(n));

  TotalOrder hidden;
  hidden.perm.resize(n);
  for (int i = 0; i < n; ++i) hidden.perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(hidden.perm[i], hidden.perm[rng() % (i + 1)]);

  Dissimilarity d(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d.set(hidden.perm[i], hidden.perm[j], profile(i, j));
  return PlantedInstance{std::move(d), std::move(hidden)};
}

Dissimilarity perturb(const Dissimilarity& d, double eta, std::uint64_t seed) {
  if (eta < 0.0) throw std::invalid_argument("perturb: eta must be >= 0");
  std::mt19937_64 rng(seed);
  const double grid = 4096.0;
  const long long reach = static_cast<long long>(std::floor(eta * grid));
  Dissimilarity out(d.size());
  for (int i = 0; i < d.size(); ++i)
    for (int j = i + 1; j < d.size(); ++j) {
      long long ticks = reach == 0
                            ? 0
                            : static_cast<long long>(rng() % (2 * reach + 1)) -
                                  reach;
      double v = d(i, j) + static_cast<double>(ticks) / grid;
      out.set(i, j, std::max(v, 0.0));
    }
  return out;
}

}  // namespace robinson
