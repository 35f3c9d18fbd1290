#include "robinson/partial_order.hpp"

#include <algorithm>

#include "robinson/relations.hpp"

namespace robinson {

std::vector<std::pair<int, int>> PartialOrderRelation::incomparable_pairs()
    const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n_; ++x)
    for (int y = x + 1; y < n_; ++y)
      if (!comparable(x, y)) out.emplace_back(x, y);
  return out;
}

TotalOrder PartialOrderRelation::to_total_order() const {
  if (!is_total()) throw internal_error("to_total_order: relation not total");
  std::vector<int> pred_count(n_, 0);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (y != x && before(y, x)) ++pred_count[x];
  TotalOrder o;
  o.perm.assign(n_, -1);
  for (int x = 0; x < n_; ++x) o.perm[pred_count[x]] = x;
  return o;
}

bool PartialOrderRelation::subset_of(const PartialOrderRelation& rel2) const {
  if (rel2.size() != n_) return false;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (before(x, y) && !rel2.before(x, y)) return false;
  return true;
}

std::vector<BetweennessTriple> betweenness_triples(const Dissimilarity& d,
                                                   double eps) {
  std::vector<BetweennessTriple> out;
  const int n = d.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double dab = d(a, b);
      for (int z = 0; z < n; ++z) {
        if (z == a || z == b) continue;
        if (much_greater(dab, std::max(d(a, z), d(z, b)), slack::compat, eps))
          out.push_back({a, b, z});
      }
    }
  return out;
}

namespace {

// Worklist closure. Every newly fixed pair is (a) closed transitively against
// the already-closed relation and (b) re-fires the orientation rules of every
// triple containing both of its endpoints.
class ClosureEngine {
 public:
  ClosureEngine(PartialOrderRelation& rel,
                const std::vector<BetweennessTriple>& triples)
      : rel_(rel), triples_(triples), by_elem_(rel.size()) {
    for (std::size_t t = 0; t < triples.size(); ++t) {
      by_elem_[triples[t].outer_a].push_back(static_cast<int>(t));
      by_elem_[triples[t].outer_b].push_back(static_cast<int>(t));
      by_elem_[triples[t].middle].push_back(static_cast<int>(t));
    }
  }

  ClosureOutcome close_existing() {
    for (int x = 0; x < rel_.size(); ++x)
      for (int y = 0; y < rel_.size(); ++y)
        if (rel_.before(x, y)) work_.emplace_back(x, y);
    return drain();
  }

  ClosureOutcome add(int x, int y) {
    if (!insert(x, y)) return fail(x, y);
    return drain();
  }

 private:
  static constexpr bool contains(const BetweennessTriple& t, int e) {
    return t.outer_a == e || t.outer_b == e || t.middle == e;
  }

  bool insert(int x, int y) {
    auto r = rel_.set_before(x, y);
    if (r == PartialOrderRelation::SetResult::kContradiction) return false;
    if (r == PartialOrderRelation::SetResult::kInserted)
      work_.emplace_back(x, y);
    return true;
  }

  ClosureOutcome fail(int x, int y) { return {false, x, y}; }

  ClosureOutcome drain() {
    const int n = rel_.size();
    while (!work_.empty()) {
      auto [x, y] = work_.back();
      work_.pop_back();

      // Transitive closure: pred(x) x succ(y), endpoints included.
      pred_.clear();
      succ_.clear();
      pred_.push_back(x);
      succ_.push_back(y);
      for (int u = 0; u < n; ++u) {
        if (rel_.before(u, x)) pred_.push_back(u);
        if (rel_.before(y, u)) succ_.push_back(u);
      }
      for (int u : pred_)
        for (int v : succ_) {
          if (u == v) return fail(u, v);
          if (!insert(u, v)) return fail(u, v);
        }

      // Triple orientation rules for triples containing both x and y.
      for (int ti : by_elem_[x]) {
        const auto& t = triples_[ti];
        if (!contains(t, y)) continue;
        if (!apply_rules(t)) return fail(t.outer_a, t.outer_b);
      }
    }
    return {true, -1, -1};
  }

  // For triple (a,b,z) with z between a and b: each known relation among the
  // three pins the side z lies on.
  bool apply_rules(const BetweennessTriple& t) {
    const int a = t.outer_a, b = t.outer_b, z = t.middle;
    if (rel_.before(a, b)) {
      if (!insert(a, z) || !insert(z, b)) return false;
    }
    if (rel_.before(b, a)) {
      if (!insert(b, z) || !insert(z, a)) return false;
    }
    if (rel_.before(a, z)) {
      if (!insert(z, b)) return false;
    }
    if (rel_.before(z, b)) {
      if (!insert(a, z)) return false;
    }
    if (rel_.before(b, z)) {
      if (!insert(z, a)) return false;
    }
    if (rel_.before(z, a)) {
      if (!insert(b, z)) return false;
    }
    return true;
  }

  PartialOrderRelation& rel_;
  const std::vector<BetweennessTriple>& triples_;
  std::vector<std::vector<int>> by_elem_;
  std::vector<std::pair<int, int>> work_;
  std::vector<int> pred_, succ_;
};

}  // namespace

ClosureOutcome close_relation(PartialOrderRelation& rel,
                              const std::vector<BetweennessTriple>& triples) {
  ClosureEngine engine(rel, triples);
  return engine.close_existing();
}

CanonicalBuild build_canonical_order(const Dissimilarity& d, double eps,
                                     std::pair<int, int> seed) {
  CanonicalBuild out{false, PartialOrderRelation(d.size()), -1, -1};
  if (d.size() < 2) {
    out.feasible = true;
    return out;
  }
  auto triples = betweenness_triples(d, eps);
  ClosureEngine engine(out.rel, triples);
  out.rel.set_before(seed.first, seed.second);
  auto res = engine.close_existing();
  out.feasible = res.ok;
  out.conflict_a = res.conflict_a;
  out.conflict_b = res.conflict_b;
  return out;
}

bool is_total(const PartialOrderRelation& rel) { return rel.is_total(); }

std::vector<std::pair<int, int>> incomparable_pairs(
    const PartialOrderRelation& rel) {
  return rel.incomparable_pairs();
}

long long canonical_property_violations(const Dissimilarity& d, double eps,
                                        const PartialOrderRelation& rel) {
  const int n = d.size();
  long long bad = 0;
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u) {
          if (w == v || w == z || w == u || v == z || v == u || z == u)
            continue;
          if (!(rel.before(w, v) && rel.before(w, z))) continue;
          if (rel.comparable(v, z)) continue;
          if (!rel.before(u, v)) continue;
          if (rel.comparable(u, z)) continue;
          if (rel.comparable(w, u)) continue;
          if (!within(d(v, w), d(z, w), 2.0, eps)) ++bad;
          if (!(d(v, z) <= std::min(d(v, w), d(z, w)) + 2.0 * eps)) ++bad;
          if (!within(d(w, z), d(u, v), 4.0, eps) ||
              !within(d(w, z), d(u, z), 4.0, eps))
            ++bad;
          if (!(d(w, u) <= std::min(d(w, v), d(u, v)) + 2.0 * eps)) ++bad;
        }
  return bad;
}

}  // namespace robinson
