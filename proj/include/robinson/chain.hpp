#pragma once

#include <optional>
#include <vector>

#include "robinson/dissimilarity.hpp"
#include "robinson/partial_order.hpp"

namespace robinson {

/// Hole interval for one off-chain element, in chain positions. Positions run
/// 0 (virtual left), 1..m (real chain elements), m+1 (virtual right); the
/// element may land in holes left_anchor .. right_anchor-1, the two extremes
/// being its bounding holes. midrange is the half-sum of the min and max
/// distance to the chain elements strictly between the anchors.
struct Segment {
  int left_anchor = 0;
  int right_anchor = 0;
  double midrange = 0.0;
  bool has_midrange = false;

  int first_hole() const { return left_anchor; }
  int last_hole() const { return right_anchor - 1; }
  int hole_count() const { return right_anchor - left_anchor; }
};

/// A longest chain of the relation plus hole bookkeeping for everything off
/// the chain. Virtual endpoints carry no distances: hole sizes and all
/// metric tests quantify over real chain elements only.
class ChainContext {
 public:
  ChainContext(const Dissimilarity& d, std::vector<int> chain_elems,
               const PartialOrderRelation& rel);

  const Dissimilarity& dis() const { return *d_; }
  const std::vector<int>& chain() const { return chain_; }
  const std::vector<int>& offchain() const { return offchain_; }
  int m() const { return static_cast<int>(chain_.size()); }
  int hole_count() const { return m() + 1; }  // holes 0..m

  /// Element at chain position t (1-based).
  int chain_at(int pos) const { return chain_[pos - 1]; }
  /// Chain position of an element, or -1 when off chain.
  int position_of(int elem) const { return pos_[elem]; }

  bool hole_is_real(int k) const { return k >= 1 && k <= m() - 1; }
  double hole_size(int k) const {
    if (!hole_is_real(k)) throw internal_error("hole_size: virtual hole");
    return (*d_)(chain_[k - 1], chain_[k]);
  }

  const Segment& segment(int elem) const { return seg_[elem]; }

 private:
  const Dissimilarity* d_;
  std::vector<int> chain_;
  std::vector<int> offchain_;
  std::vector<int> pos_;
  std::vector<Segment> seg_;
};

/// Longest chain of the comparability DAG, deterministic under ties.
ChainContext build_chain_context(const Dissimilarity& d,
                                 const PartialOrderRelation& rel);

enum class SegmentRelation {
  kEqual,        // same holes
  kDisjoint,     // no shared hole
  kOverlapMany,  // crossing, >= 2 shared holes
  kOverlapOne,   // crossing, exactly one shared hole
  kContains,     // second a proper subinterval of first
  kInside,       // first a proper subinterval of second
};

SegmentRelation classify_segments(const Segment& a, const Segment& b);

/// Violation of the chain order with x inserted into the given hole,
/// measured over real chain elements plus x.
double insertion_violation(const ChainContext& ctx, int x, int hole);

bool hole_admissible(const ChainContext& ctx, double eps, int x, int hole);

/// Joint insertion of two elements. When both land in the same hole, the
/// better of the two relative placements counts.
double pair_insertion_violation(const ChainContext& ctx, int x, int hole_x,
                                int y, int hole_y);

bool pair_admissible(const ChainContext& ctx, double eps, int x, int hole_x,
                     int y, int hole_y, double c);

struct ChainDiagnostics {
  long long sizehole_checks = 0;
  long long sizehole_violations = 0;
  long long bounding_support_failures = 0;  // after augmentation settled
};

/// Admissible and pairwise-supported holes per off-chain element, indexed by
/// element id.
struct AdmissibilityInfo {
  std::vector<std::vector<int>> admissible;
  std::vector<std::vector<int>> supported;
};

struct SupportOutcome {
  enum Status { kSettled, kAugment } status = kSettled;
  /// Relations to add to the canonical order (x after a given chain element
  /// or before one), as (before, after) element pairs.
  std::vector<std::pair<int, int>> augment_pairs;
  AdmissibilityInfo info;
};

/// One pass of the supported-hole computation. When a bounding hole of some
/// element is unsupported, the pass reports the order augmentations that pin
/// the element inward; the caller re-closes the relation and rebuilds the
/// chain context before asking again.
SupportOutcome compute_supported_holes(const ChainContext& ctx, double eps,
                                       ChainDiagnostics* diag = nullptr);

/// Diagnostic: checks the hole-size relation on every admissible inner hole
/// and the midrange lower bound over inner chain pairs.
void check_sizehole(const ChainContext& ctx, double eps, int x, int hole,
                    ChainDiagnostics& diag);

}  // namespace robinson
