#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "robinson/dissimilarity.hpp"

namespace robinson {

enum class Rel : std::int8_t { kUnknown = 0, kBefore = 1, kAfter = 2 };

/// Antisymmetric ternary relation over {0,...,n-1}. The closure routines keep
/// it transitively closed; a pair set in both directions is a contradiction.
class PartialOrderRelation {
 public:
  explicit PartialOrderRelation(int n)
      : n_(n), st_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }

  Rel state(int x, int y) const {
    return static_cast<Rel>(st_[static_cast<std::size_t>(x) * n_ + y]);
  }
  bool before(int x, int y) const { return state(x, y) == Rel::kBefore; }
  bool comparable(int x, int y) const { return state(x, y) != Rel::kUnknown; }

  enum class SetResult { kNoChange, kInserted, kContradiction };

  /// Records x before y (no closure; see close_relation for propagation).
  SetResult set_before(int x, int y) {
    if (x == y) return SetResult::kContradiction;
    Rel cur = state(x, y);
    if (cur == Rel::kBefore) return SetResult::kNoChange;
    if (cur == Rel::kAfter) return SetResult::kContradiction;
    put(x, y, Rel::kBefore);
    put(y, x, Rel::kAfter);
    ++related_;
    return SetResult::kInserted;
  }

  int related_pairs() const { return related_; }
  bool is_total() const { return related_ == n_ * (n_ - 1) / 2; }

  std::vector<std::pair<int, int>> incomparable_pairs() const;

  /// Chain extraction for a total relation (sorts by predecessor count).
  TotalOrder to_total_order() const;

  /// True when rel2 contains every pair of *this.
  bool subset_of(const PartialOrderRelation& rel2) const;

 private:
  void put(int x, int y, Rel r) {
    st_[static_cast<std::size_t>(x) * n_ + y] = static_cast<std::int8_t>(r);
  }

  int n_;
  int related_ = 0;
  std::vector<std::int8_t> st_;
};

/// Ordered triple (a,b,z): d(a,b) > max{d(a,z), d(z,b)} + 2*eps, so z sits
/// between a and b in every eps-compatible order. Outer pair stored a < b.
struct BetweennessTriple {
  int outer_a = 0;
  int outer_b = 0;
  int middle = 0;
};

std::vector<BetweennessTriple> betweenness_triples(const Dissimilarity& d,
                                                   double eps);

struct ClosureOutcome {
  bool ok = true;
  int conflict_a = -1;  // offending pair when a contradiction arose
  int conflict_b = -1;
};

/// Closes rel under transitivity and the orientation rules of the
/// betweenness triples, to a fixpoint. On contradiction rel is left in a
/// partially updated state and the offending pair is reported.
ClosureOutcome close_relation(PartialOrderRelation& rel,
                              const std::vector<BetweennessTriple>& triples);

struct CanonicalBuild {
  bool feasible = false;
  PartialOrderRelation rel;
  int conflict_a = -1;
  int conflict_b = -1;
};

/// Seeds p before q and closes. Infeasible (feasible=false) exactly when the
/// closure runs into a contradiction.
CanonicalBuild build_canonical_order(const Dissimilarity& d, double eps,
                                     std::pair<int, int> seed = {0, 1});

bool is_total(const PartialOrderRelation& rel);

std::vector<std::pair<int, int>> incomparable_pairs(
    const PartialOrderRelation& rel);

/// Diagnostic only: counts violations of the four structural properties of
/// the canonical order on quadruples (w,v,z,u) with w before {v,z}, v?z,
/// u before v, u?z, w?u. Meaningful when an eps-compatible order exists.
long long canonical_property_violations(const Dissimilarity& d, double eps,
                                        const PartialOrderRelation& rel);

}  // namespace robinson
