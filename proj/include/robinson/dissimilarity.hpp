#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace robinson {

// Raised when an internal consistency check fails. These conditions are
// never a user-visible answer; they indicate a bug, not an infeasible input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Symmetric nonnegative dissimilarity with zero diagonal, stored as a flat
/// upper triangle. Values are treated as immutable once a matrix has been
/// handed to the algorithms.
class Dissimilarity {
 public:
  Dissimilarity() : Dissimilarity(1) {}
  explicit Dissimilarity(int n) : n_(n), v_(tri_size(n), 0.0) {
    if (n < 1) throw std::invalid_argument("Dissimilarity: n must be >= 1");
  }

  int size() const { return n_; }

  double operator()(int x, int y) const {
    if (x == y) return 0.0;
    return v_[index(x, y)];
  }

  void set(int x, int y, double value) {
    if (x == y) {
      if (value != 0.0)
        throw std::invalid_argument("Dissimilarity: diagonal must stay zero");
      return;
    }
    if (value < 0.0)
      throw std::invalid_argument("Dissimilarity: negative value");
    v_[index(x, y)] = value;
  }

  /// Build from the upper-triangle values listed row by row:
  /// (0,1), (0,2), ..., (0,n-1), (1,2), ...
  static Dissimilarity from_upper(int n, std::span<const double> upper);

  bool operator==(const Dissimilarity& o) const {
    return n_ == o.n_ && v_ == o.v_;
  }

 private:
  static std::size_t tri_size(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
  }
  std::size_t index(int x, int y) const {
    if (x > y) std::swap(x, y);
    return static_cast<std::size_t>(x) * n_ - static_cast<std::size_t>(x) * (x + 1) / 2 +
           (y - x - 1);
  }

  int n_;
  std::vector<double> v_;
};

/// A permutation of {0,...,n-1}; perm[k] is the element at position k.
struct TotalOrder {
  std::vector<int> perm;

  static TotalOrder identity(int n);
  TotalOrder reversed() const;
  /// positions()[e] is the position of element e.
  std::vector<int> positions() const;
  bool valid() const;
  int size() const { return static_cast<int>(perm.size()); }
};

struct FitResult {
  TotalOrder order;
  Dissimilarity fitted;
  double achieved_error = 0.0;
  double accepted_epsilon = 0.0;
};

/// max |d1 - d2| over all pairs; the matrices must have equal size.
double linf_distance(const Dissimilarity& d1, const Dissimilarity& d2);

/// Least eps >= 0 such that the sequence, read as a total order over exactly
/// the listed elements, is eps-compatible with d. Nested quadruples include
/// the degenerate coincidences at either end.
double sequence_violation(const Dissimilarity& d, std::span<const int> seq);

/// sequence_violation over a full order on all of d's elements.
double compatibility_violation(const Dissimilarity& d, const TotalOrder& order);

bool check_robinson(const Dissimilarity& d, const TotalOrder& order);

/// The pointwise max of d over order-nested pairs (endpoints included):
/// result(x,y) = max d(u,v) over u,v lying between x and y in the order.
Dissimilarity subinterval_max(const Dissimilarity& d, const TotalOrder& order);

/// Best fit compatible with a fixed order: clamp the nested max down by half
/// the worst gap. Optimal in l-infinity among dissimilarities compatible with
/// that order.
FitResult fit_for_order(const Dissimilarity& d, const TotalOrder& order);

/// Sorted deduplicated halves of absolute differences of off-diagonal
/// entries; always contains 0. The optimal error is always in this list.
std::vector<double> candidate_errors(const Dissimilarity& d);

}  // namespace robinson
