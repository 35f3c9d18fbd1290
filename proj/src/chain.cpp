#include "robinson/chain.hpp"

#include <algorithm>
#include <cmath>

#include "robinson/relations.hpp"

namespace robinson {

ChainContext::ChainContext(const Dissimilarity& d, std::vector<int> chain_elems,
                           const PartialOrderRelation& rel)
    : d_(&d), chain_(std::move(chain_elems)) {
  const int n = d.size();
  pos_.assign(n, -1);
  for (int t = 0; t < m(); ++t) pos_[chain_[t]] = t + 1;
  for (int e = 0; e < n; ++e)
    if (pos_[e] == -1) offchain_.push_back(e);

  seg_.assign(n, Segment{});
  for (int x : offchain_) {
    Segment s;
    s.left_anchor = 0;
    s.right_anchor = m() + 1;
    for (int t = 1; t <= m(); ++t) {
      if (rel.before(chain_at(t), x)) s.left_anchor = t;
      if (rel.before(x, chain_at(t))) {
        s.right_anchor = t;
        break;
      }
    }
    // A maximal chain leaves every off-chain element at least two holes.
    if (s.hole_count() < 2)
      throw internal_error("segment collapsed: chain not maximal");
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (int t = s.left_anchor + 1; t < s.right_anchor; ++t) {
      double v = (*d_)(x, chain_at(t));
      if (!any) {
        lo = hi = v;
        any = true;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    // The interior always holds a real chain element here; the zero fallback
    // only guards a convention change elsewhere.
    s.has_midrange = any;
    s.midrange = any ? 0.5 * (lo + hi) : 0.0;
    seg_[x] = s;
  }
}

ChainContext build_chain_context(const Dissimilarity& d,
                                 const PartialOrderRelation& rel) {
  const int n = rel.size();
  // Kahn order over the comparability DAG, smallest id first.
  std::vector<int> indeg(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (y != x && rel.before(y, x)) ++indeg[x];
  std::vector<int> topo;
  std::vector<char> done(n, 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick == -1) throw internal_error("chain: comparability graph cyclic");
    done[pick] = 1;
    topo.push_back(pick);
    for (int y = 0; y < n; ++y)
      if (!done[y] && rel.before(pick, y)) --indeg[y];
  }

  // Longest path; ties resolved toward the smallest predecessor id.
  std::vector<int> len(n, 1), from(n, -1);
  for (int v : topo)
    for (int u = 0; u < n; ++u)
      if (u != v && rel.before(u, v)) {
        if (len[u] + 1 > len[v] || (len[u] + 1 == len[v] && u < from[v])) {
          len[v] = len[u] + 1;
          from[v] = u;
        }
      }
  int best = 0;
  for (int v = 0; v < n; ++v)
    if (len[v] > len[best]) best = v;
  std::vector<int> chain;
  for (int v = best; v != -1; v = from[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  return ChainContext(d, std::move(chain), rel);
}

SegmentRelation classify_segments(const Segment& a, const Segment& b) {
  const int a1 = a.first_hole(), a2 = a.last_hole();
  const int b1 = b.first_hole(), b2 = b.last_hole();
  if (a1 == b1 && a2 == b2) return SegmentRelation::kEqual;
  if (a2 < b1 || b2 < a1) return SegmentRelation::kDisjoint;
  if (a1 <= b1 && b2 <= a2) return SegmentRelation::kContains;
  if (b1 <= a1 && a2 <= b2) return SegmentRelation::kInside;
  int shared = std::min(a2, b2) - std::max(a1, b1) + 1;
  return shared >= 2 ? SegmentRelation::kOverlapMany
                     : SegmentRelation::kOverlapOne;
}

namespace {

// Chain elements with x dropped in after chain position `hole`.
void insertion_sequence(const ChainContext& ctx, int x, int hole,
                        std::vector<int>& out) {
  out.clear();
  for (int t = 1; t <= ctx.m(); ++t) {
    if (t == hole + 1) out.push_back(x);
    out.push_back(ctx.chain_at(t));
  }
  if (hole == ctx.m()) out.push_back(x);
}

}  // namespace

double insertion_violation(const ChainContext& ctx, int x, int hole) {
  std::vector<int> seq;
  insertion_sequence(ctx, x, hole, seq);
  return sequence_violation(ctx.dis(), seq);
}

bool hole_admissible(const ChainContext& ctx, double eps, int x, int hole) {
  return insertion_violation(ctx, x, hole) <= eps;
}

double pair_insertion_violation(const ChainContext& ctx, int x, int hole_x,
                                int y, int hole_y) {
  std::vector<int> seq;
  seq.reserve(ctx.m() + 2);
  auto build = [&](bool x_first) {
    seq.clear();
    for (int t = 0; t <= ctx.m(); ++t) {
      if (t == hole_x && t == hole_y) {
        seq.push_back(x_first ? x : y);
        seq.push_back(x_first ? y : x);
      } else {
        if (t == hole_x) seq.push_back(x);
        if (t == hole_y) seq.push_back(y);
      }
      if (t < ctx.m()) seq.push_back(ctx.chain_at(t + 1));
    }
  };
  build(true);
  double v = sequence_violation(ctx.dis(), seq);
  if (hole_x == hole_y) {
    build(false);
    v = std::min(v, sequence_violation(ctx.dis(), seq));
  }
  return v;
}

bool pair_admissible(const ChainContext& ctx, double eps, int x, int hole_x,
                     int y, int hole_y, double c) {
  return pair_insertion_violation(ctx, x, hole_x, y, hole_y) <= c * eps;
}

void check_sizehole(const ChainContext& ctx, double eps, int x, int hole,
                    ChainDiagnostics& diag) {
  const Segment& s = ctx.segment(x);
  if (hole <= s.first_hole() || hole >= s.last_hole()) return;  // bounding
  if (!ctx.hole_is_real(hole) || !s.has_midrange) return;
  ++diag.sizehole_checks;
  const Dissimilarity& d = ctx.dis();
  double left = d(x, ctx.chain_at(hole));
  double right = d(x, ctx.chain_at(hole + 1));
  double size = ctx.hole_size(hole);
  bool ok = within(s.midrange, left, 1.0, eps) &&
            within(s.midrange, right, 1.0, eps) &&
            within(left, size, 2.0, eps) && within(right, size, 2.0, eps) &&
            within(s.midrange, size, slack::hole_size, eps);
  if (!ok) ++diag.sizehole_violations;
}

SupportOutcome compute_supported_holes(const ChainContext& ctx, double eps,
                                       ChainDiagnostics* diag) {
  SupportOutcome out;
  const auto& off = ctx.offchain();
  const int n = ctx.dis().size();
  out.info.admissible.assign(n, {});
  out.info.supported.assign(n, {});

  for (int x : off) {
    const Segment& s = ctx.segment(x);
    for (int k = s.first_hole(); k <= s.last_hole(); ++k)
      if (hole_admissible(ctx, eps, x, k)) {
        out.info.admissible[x].push_back(k);
        if (diag) check_sizehole(ctx, eps, x, k, *diag);
      }
  }

  for (int x : off) {
    const Segment& sx = ctx.segment(x);
    for (int k : out.info.admissible[x]) {
      bool supported = true;
      for (int y : off) {
        if (y == x) continue;
        bool found = false;
        for (int k2 : out.info.admissible[y])
          if (pair_admissible(ctx, eps, x, k, y, k2, 1.0)) {
            found = true;
            break;
          }
        if (!found) {
          supported = false;
          break;
        }
      }
      if (supported) out.info.supported[x].push_back(k);
    }

    auto in_supported = [&](int k) {
      const auto& sup = out.info.supported[x];
      return std::find(sup.begin(), sup.end(), k) != sup.end();
    };
    // An unsupported bounding hole pins x strictly inside it.
    if (!in_supported(sx.first_hole())) {
      out.status = SupportOutcome::kAugment;
      out.augment_pairs.emplace_back(ctx.chain_at(sx.first_hole() + 1), x);
    }
    if (!in_supported(sx.last_hole())) {
      out.status = SupportOutcome::kAugment;
      out.augment_pairs.emplace_back(x, ctx.chain_at(sx.last_hole()));
    }
  }

  if (diag && out.status == SupportOutcome::kSettled) {
    for (int x : off) {
      const Segment& sx = ctx.segment(x);
      if (!hole_admissible(ctx, eps, x, sx.first_hole()) ||
          !hole_admissible(ctx, eps, x, sx.last_hole()))
        ++diag->bounding_support_failures;
    }
  }
  return out;
}

}  // namespace robinson
