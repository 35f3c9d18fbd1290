#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "robinson/chain.hpp"
#include "support.hpp"

using namespace robinson;
using testsupport::line_distance;

namespace {

// Relation containing exactly the given chains, transitively closed.
PartialOrderRelation rel_from_chains(
    int n, const std::vector<std::vector<int>>& chains) {
  PartialOrderRelation rel(n);
  for (const auto& c : chains)
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      rel.set_before(c[i], c[i + 1]);
  auto res = close_relation(rel, {});
  REQUIRE(res.ok);
  return rel;
}

}  // namespace

TEST_CASE("maximal chain extraction") {
  auto line = line_distance(4);

  auto total = rel_from_chains(4, {{0, 1, 2, 3}});
  auto ctx = build_chain_context(line, total);
  CHECK(ctx.chain() == std::vector<int>{0, 1, 2, 3});
  CHECK(ctx.offchain().empty());

  auto seed_only = rel_from_chains(4, {{0, 1}});
  auto ctx2 = build_chain_context(line, seed_only);
  CHECK(ctx2.chain() == std::vector<int>{0, 1});
  CHECK(ctx2.offchain() == std::vector<int>{2, 3});
  CHECK(ctx2.hole_count() == 3);

  auto branched = rel_from_chains(4, {{0, 2, 3}, {0, 1}});
  auto ctx3 = build_chain_context(line, branched);
  CHECK(ctx3.chain() == std::vector<int>{0, 2, 3});
  CHECK(ctx3.offchain() == std::vector<int>{1});
}

TEST_CASE("segments and midranges") {
  // Chain 0<1<2<3 with element 4 below 3 and above 0, incomparable to 1,2.
  Dissimilarity d(5);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d.set(i, j, 10.0 * (j - i));
  d.set(0, 4, 1.0);
  d.set(1, 4, 2.0);
  d.set(2, 4, 6.0);
  d.set(3, 4, 3.0);
  auto rel = rel_from_chains(5, {{0, 1, 2, 3}, {0, 4}, {4, 3}});
  auto ctx = build_chain_context(d, rel);
  REQUIRE(ctx.chain() == std::vector<int>{0, 1, 2, 3});

  const Segment& s = ctx.segment(4);
  CHECK(s.left_anchor == 1);
  CHECK(s.right_anchor == 4);
  CHECK(s.first_hole() == 1);
  CHECK(s.last_hole() == 3);
  // Inner chain elements are 1 and 2: midrange of {2, 6}.
  CHECK(s.midrange == 4.0);

  // Constant distances give the constant as midrange.
  Dissimilarity c(5);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) c.set(i, j, 10.0 * (j - i));
  for (int i = 0; i < 4; ++i) c.set(i, 4, 5.0);
  auto ctx2 = build_chain_context(c, rel_from_chains(5, {{0, 1, 2, 3}}));
  CHECK(ctx2.segment(4).midrange == 5.0);
  CHECK(ctx2.segment(4).first_hole() == 0);
  CHECK(ctx2.segment(4).last_hole() == 4);
}

TEST_CASE("segment classification") {
  auto seg = [](int first_hole, int last_hole) {
    Segment s;
    s.left_anchor = first_hole;
    s.right_anchor = last_hole + 1;
    return s;
  };
  CHECK(classify_segments(seg(1, 4), seg(1, 4)) == SegmentRelation::kEqual);
  CHECK(classify_segments(seg(1, 2), seg(3, 5)) == SegmentRelation::kDisjoint);
  CHECK(classify_segments(seg(1, 3), seg(3, 5)) ==
        SegmentRelation::kOverlapOne);
  CHECK(classify_segments(seg(1, 3), seg(2, 5)) ==
        SegmentRelation::kOverlapMany);
  CHECK(classify_segments(seg(1, 5), seg(2, 4)) ==
        SegmentRelation::kContains);
  CHECK(classify_segments(seg(2, 4), seg(1, 5)) == SegmentRelation::kInside);
  // Containment sharing an endpoint still counts as containment.
  CHECK(classify_segments(seg(1, 4), seg(1, 2)) ==
        SegmentRelation::kContains);
  CHECK(classify_segments(seg(2, 4), seg(1, 4)) == SegmentRelation::kInside);

  // The six classes partition all interval pairs, and swapping arguments
  // only flips the side flags.
  auto mirror = [](SegmentRelation r) {
    if (r == SegmentRelation::kContains) return SegmentRelation::kInside;
    if (r == SegmentRelation::kInside) return SegmentRelation::kContains;
    return r;
  };
  for (int a1 = 0; a1 <= 5; ++a1)
    for (int a2 = a1; a2 <= 5; ++a2)
      for (int b1 = 0; b1 <= 5; ++b1)
        for (int b2 = b1; b2 <= 5; ++b2) {
          auto fwd = classify_segments(seg(a1, a2), seg(b1, b2));
          CHECK(classify_segments(seg(b1, b2), seg(a1, a2)) == mirror(fwd));
        }
}

namespace {

// Four chain elements on a line plus one detached element at constant
// distance `r` from all of them. Chain ids 0..3, off-chain id 4.
struct DetachedFixture {
  Dissimilarity d;
  PartialOrderRelation rel;
  DetachedFixture(const std::vector<double>& pos, double r)
      : d(5), rel(5) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) d.set(i, j, pos[j] - pos[i]);
    for (int i = 0; i < 4; ++i) d.set(i, 4, r);
    rel = rel_from_chains(5, {{0, 1, 2, 3}});
  }
};

}  // namespace

TEST_CASE("hole admissibility") {
  // Hole sizes 10, 20, 10; the detached element sits at distance 5 from
  // everything, so its midrange is 5 and the size-20 inner hole is more than
  // 3*eps away from it.
  DetachedFixture f({0.0, 10.0, 30.0, 40.0}, 5.0);
  auto ctx = build_chain_context(f.d, f.rel);
  REQUIRE(ctx.segment(4).first_hole() == 0);
  REQUIRE(ctx.segment(4).last_hole() == 4);
  CHECK(ctx.segment(4).midrange == 5.0);
  CHECK(ctx.hole_size(2) == 20.0);
  CHECK_FALSE(hole_admissible(ctx, 1.0, 4, 2));

  // At huge eps every hole of the segment becomes admissible.
  for (int k = 0; k <= 4; ++k) CHECK(hole_admissible(ctx, 50.0, 4, k));

  // A consistent middle placement is admissible even at eps = 0.
  Dissimilarity g(5);
  std::vector<double> pos{0.0, 10.0, 20.0, 30.0};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g.set(i, j, pos[j] - pos[i]);
  g.set(0, 4, 15.0);
  g.set(1, 4, 5.0);
  g.set(2, 4, 5.0);
  g.set(3, 4, 15.0);
  auto gctx = build_chain_context(g, rel_from_chains(5, {{0, 1, 2, 3}}));
  CHECK(gctx.segment(4).midrange == 10.0);
  CHECK(hole_admissible(gctx, 0.0, 4, 2));
}

TEST_CASE("size relation holds on admissible inner holes at a fixpoint") {
  // Chain on a line with spacing 10, detached element at distance 15 from
  // every chain element, eps = 8. The only applicable inferences pin the
  // element between the chain ends, which the relation already contains, so
  // it is a closure fixpoint and the element keeps two inner holes.
  Dissimilarity d(6);
  std::vector<double> pos{0, 10, 20, 30, 40};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) d.set(i, j, pos[j] - pos[i]);
  for (int i = 0; i < 5; ++i) d.set(i, 5, 15.0);
  auto rel = rel_from_chains(6, {{0, 1, 2, 3, 4}, {0, 5}, {5, 4}});
  {
    auto check = rel;
    auto res = close_relation(check, betweenness_triples(d, 8.0));
    REQUIRE(res.ok);
    REQUIRE(check.related_pairs() == rel.related_pairs());
  }
  auto ctx = build_chain_context(d, rel);
  const Segment& s = ctx.segment(5);
  REQUIRE(s.first_hole() == 1);
  REQUIRE(s.last_hole() == 4);
  CHECK(s.midrange == 15.0);

  ChainDiagnostics diag;
  for (int k = 2; k <= 3; ++k) {
    REQUIRE(hole_admissible(ctx, 8.0, 5, k));
    check_sizehole(ctx, 8.0, 5, k, diag);
  }
  CHECK(diag.sizehole_checks == 2);
  CHECK(diag.sizehole_violations == 0);
}

TEST_CASE("pairwise admissibility") {
  // Tight chain 0-1-2, two detached elements close to the chain but far from
  // each other: the only placements that work at c=1 are in different
  // bounding holes.
  Dissimilarity d(5);
  d.set(0, 1, 1.0);
  d.set(0, 2, 2.0);
  d.set(1, 2, 1.0);
  for (int c = 0; c < 3; ++c) {
    d.set(c, 3, 1.0);
    d.set(c, 4, 1.0);
  }
  d.set(3, 4, 10.0);
  auto rel = rel_from_chains(5, {{0, 1, 2}});
  auto ctx = build_chain_context(d, rel);
  const double eps = 0.5;
  REQUIRE(hole_admissible(ctx, eps, 3, 0));
  REQUIRE(hole_admissible(ctx, eps, 4, 3));

  CHECK(pair_admissible(ctx, eps, 3, 0, 4, 3, 1.0));
  CHECK_FALSE(pair_admissible(ctx, eps, 3, 0, 4, 0, 1.0));
  CHECK_FALSE(pair_admissible(ctx, eps, 3, 3, 4, 3, 1.0));
  // The pairwise-tolerant bound accepts far more.
  CHECK(pair_admissible(ctx, eps, 3, 0, 4, 0, 12.0));

  // Disjoint segments with line-consistent distances pass at c = 12.
  Dissimilarity line(7);
  std::vector<double> pos{0, 10, 20, 30, 40, 9, 29};
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      line.set(i, j, std::fabs(pos[j] - pos[i]));
  auto rel2 = rel_from_chains(
      7, {{0, 1, 2, 3, 4}, {0, 5}, {5, 2}, {2, 6}, {6, 4}});
  auto ctx2 = build_chain_context(line, rel2);
  REQUIRE(ctx2.chain() == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(classify_segments(ctx2.segment(5), ctx2.segment(6)) ==
        SegmentRelation::kDisjoint);
  CHECK(pair_admissible(ctx2, 1.0, 5, ctx2.segment(5).first_hole(), 6,
                        ctx2.segment(6).last_hole(), 12.0));
}

TEST_CASE("supported holes and augmentation") {
  // Far-from-everything element: no hole is admissible at eps = 1, so both
  // bounding holes are unsupported and the pass pins it inward from both
  // sides.
  DetachedFixture f({0.0, 10.0, 30.0, 40.0}, 5.0);
  auto ctx = build_chain_context(f.d, f.rel);
  auto support = compute_supported_holes(ctx, 1.0);
  CHECK(support.status == SupportOutcome::kAugment);
  bool pins_left = false, pins_right = false;
  for (auto [a, b] : support.augment_pairs) {
    if (a == 0 && b == 4) pins_left = true;   // chain_at(1) before x
    if (a == 4 && b == 3) pins_right = true;  // x before chain_at(m)
  }
  CHECK(pins_left);
  CHECK(pins_right);

  // Single off-chain element with huge eps: supported everywhere, settled.
  auto big = compute_supported_holes(ctx, 50.0);
  CHECK(big.status == SupportOutcome::kSettled);
  CHECK(big.info.supported[4].size() == 5);

  // Two compatible detached elements: settled, bounding holes supported.
  Dissimilarity d(5);
  d.set(0, 1, 1.0);
  d.set(0, 2, 2.0);
  d.set(1, 2, 1.0);
  for (int c = 0; c < 3; ++c) {
    d.set(c, 3, 1.0);
    d.set(c, 4, 1.0);
  }
  d.set(3, 4, 10.0);
  auto ctx2 = build_chain_context(d, rel_from_chains(5, {{0, 1, 2}}));
  auto sup2 = compute_supported_holes(ctx2, 0.5);
  CHECK(sup2.status == SupportOutcome::kSettled);
  for (int x : {3, 4}) {
    const auto& holes = sup2.info.supported[x];
    CHECK(std::find(holes.begin(), holes.end(),
                    ctx2.segment(x).first_hole()) != holes.end());
    CHECK(std::find(holes.begin(), holes.end(),
                    ctx2.segment(x).last_hole()) != holes.end());
  }
}

TEST_CASE("insertion violation agrees with the brute force") {
  testsupport::Rng rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    int m = 3 + rng.below(3);
    auto d = testsupport::random_matrix(m + 1, rng);
    std::vector<int> chain_ids;
    for (int i = 0; i < m; ++i) chain_ids.push_back(i);
    std::vector<std::vector<int>> chains{chain_ids};
    auto ctx = build_chain_context(d, rel_from_chains(m + 1, chains));
    for (int k = 0; k <= m; ++k) {
      std::vector<int> seq;
      for (int t = 0; t < m; ++t) {
        if (t == k) seq.push_back(m);
        seq.push_back(t);
      }
      if (k == m) seq.push_back(m);
      CHECK(insertion_violation(ctx, m, k) ==
            testsupport::brute_violation(d, seq));
    }
  }
}
