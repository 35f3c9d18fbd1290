#include "robinson/dissimilarity.hpp"

#include <algorithm>
#include <cmath>

namespace robinson {

Dissimilarity Dissimilarity::from_upper(int n, std::span<const double> upper) {
  Dissimilarity d(n);
  if (upper.size() != d.v_.size())
    throw std::invalid_argument("from_upper: wrong number of values");
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.set(i, j, upper[k++]);
  return d;
}

TotalOrder TotalOrder::identity(int n) {
  TotalOrder o;
  o.perm.resize(n);
  for (int i = 0; i < n; ++i) o.perm[i] = i;
  return o;
}

TotalOrder TotalOrder::reversed() const {
  TotalOrder o = *this;
  std::reverse(o.perm.begin(), o.perm.end());
  return o;
}

std::vector<int> TotalOrder::positions() const {
  std::vector<int> pos(perm.size());
  for (int k = 0; k < size(); ++k) pos[perm[k]] = k;
  return pos;
}

bool TotalOrder::valid() const {
  std::vector<char> seen(perm.size(), 0);
  for (int e : perm) {
    if (e < 0 || e >= size() || seen[e]) return false;
    seen[e] = 1;
  }
  return true;
}

double linf_distance(const Dissimilarity& d1, const Dissimilarity& d2) {
  if (d1.size() != d2.size())
    throw std::invalid_argument("linf_distance: dimension mismatch");
  double worst = 0.0;
  for (int x = 0; x < d1.size(); ++x)
    for (int y = x + 1; y < d1.size(); ++y)
      worst = std::max(worst, std::fabs(d1(x, y) - d2(x, y)));
  return worst;
}

namespace {

// Nested max over a sequence: nest[i][j] = max d over pairs drawn from
// seq[i..j]. Standard interval DP, O(k^2).
std::vector<std::vector<double>> nested_max(const Dissimilarity& d,
                                            std::span<const int> seq) {
  const int k = static_cast<int>(seq.size());
  std::vector<std::vector<double>> nest(k, std::vector<double>(k, 0.0));
  for (int len = 1; len < k; ++len)
    for (int i = 0; i + len < k; ++i) {
      int j = i + len;
      double m = d(seq[i], seq[j]);
      if (len > 1) m = std::max({m, nest[i + 1][j], nest[i][j - 1]});
      nest[i][j] = m;
    }
  return nest;
}

}  // namespace

double sequence_violation(const Dissimilarity& d, std::span<const int> seq) {
  const int k = static_cast<int>(seq.size());
  if (k <= 2) return 0.0;
  auto nest = nested_max(d, seq);
  double worst = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      worst = std::max(worst, nest[i][j] - d(seq[i], seq[j]));
  return 0.5 * worst;
}

double compatibility_violation(const Dissimilarity& d, const TotalOrder& order) {
  if (order.size() != d.size())
    throw std::invalid_argument("compatibility_violation: order size mismatch");
  return sequence_violation(d, order.perm);
}

bool check_robinson(const Dissimilarity& d, const TotalOrder& order) {
  return compatibility_violation(d, order) == 0.0;
}

Dissimilarity subinterval_max(const Dissimilarity& d, const TotalOrder& order) {
  auto nest = nested_max(d, order.perm);
  Dissimilarity out(d.size());
  for (int i = 0; i < d.size(); ++i)
    for (int j = i + 1; j < d.size(); ++j)
      out.set(order.perm[i], order.perm[j], nest[i][j]);
  return out;
}

FitResult fit_for_order(const Dissimilarity& d, const TotalOrder& order) {
  Dissimilarity nest = subinterval_max(d, order);
  double half = 0.5 * linf_distance(d, nest);
  Dissimilarity fitted(d.size());
  for (int x = 0; x < d.size(); ++x)
    for (int y = x + 1; y < d.size(); ++y)
      fitted.set(x, y, std::max(nest(x, y) - half, 0.0));
  return FitResult{order, std::move(fitted), half, half};
}

std::vector<double> candidate_errors(const Dissimilarity& d) {
  std::vector<double> vals;
  for (int x = 0; x < d.size(); ++x)
    for (int y = x + 1; y < d.size(); ++y) vals.push_back(d(x, y));
  std::vector<double> out;
  out.push_back(0.0);
  for (std::size_t a = 0; a < vals.size(); ++a)
    for (std::size_t b = a + 1; b < vals.size(); ++b)
      out.push_back(0.5 * std::fabs(vals[a] - vals[b]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace robinson
