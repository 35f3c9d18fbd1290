#include "robinson/solver.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "robinson/relations.hpp"

namespace robinson {

TwoSatInstance build_split_formula(const CellDigraph& g,
                                   const ClusterStructure& cs,
                                   const OmegaSets& omega) {
  TwoSatInstance inst;
  inst.var_count = g.cell_count;
  for (int cl = 0; cl < cs.cluster_count; ++cl) {
    const auto& cells = cs.cluster_cells[cl];
    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
      inst.add_equal(cells[i], cells[i + 1]);
    int twin = cs.twin_of[cl];
    if (twin > cl)
      for (int c1 : cells)
        for (int c2 : cs.cluster_cells[twin]) inst.add_not_equal(c1, c2);
  }
  for (int c = 0; c < g.cell_count; ++c) {
    for (auto [a, b] : omega.single_in[c]) inst.add_not_equal(b, a);
    for (auto [a, b] : omega.double_in[c]) inst.add_not_equal(b, a);
    for (auto [b, c0] : omega.double_out[c]) inst.add_not_equal(b, c0);
  }
  return inst;
}

namespace {

// Kahn topological order over the cells marked in `keep`, all arc kinds,
// smallest cell id first.
std::vector<int> topo_order(const CellDigraph& g, const std::vector<char>& keep,
                            bool reversed) {
  const int n = g.cell_count;
  std::vector<int> indeg(n, 0);
  auto arc = [&](int a, int b) {
    return reversed ? g.has_arc(b, a) : g.has_arc(a, b);
  };
  int total = 0;
  for (int v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    ++total;
    for (int u = 0; u < n; ++u)
      if (u != v && keep[u] && arc(u, v)) ++indeg[v];
  }
  std::vector<int> out;
  std::vector<char> used(n, 0);
  for (int step = 0; step < total; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (keep[v] && !used[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick == -1)
      throw internal_error("topological sort on a cyclic side subgraph");
    used[pick] = 1;
    out.push_back(pick);
    for (int v = 0; v < n; ++v)
      if (keep[v] && !used[v] && arc(pick, v)) --indeg[v];
  }
  return out;
}

const char* arc_kind_name(ArcKind k) {
  switch (k) {
    case ArcKind::kTwin: return "twin";
    case ArcKind::kMidrange: return "midrange";
    case ArcKind::kWitness: return "witness";
    default: return "none";
  }
}

void dump_segment(std::string* dump, const SegmentInput& in,
                  const CellDecomposition& cd, const CellDigraph& g) {
  if (!dump) return;
  std::ostringstream os;
  os << "segment";
  for (int e : in.members) os << ' ' << e;
  os << '\n';
  for (int a = 0; a < in.count(); ++a)
    for (int b = a + 1; b < in.count(); ++b) {
      if (cd.links.linked(a, b))
        os << "linked " << in.members[a] << ' ' << in.members[b] << '\n';
      if (cd.links.separated(a, b))
        os << "separated " << in.members[a] << ' ' << in.members[b] << '\n';
    }
  for (auto [a, b] : cd.arcs)
    os << "arc " << in.members[a] << ' ' << in.members[b] << '\n';
  for (int c1 = 0; c1 < g.cell_count; ++c1)
    for (int c2 = 0; c2 < g.cell_count; ++c2)
      if (g.has_arc(c1, c2))
        os << "cellarc " << arc_kind_name(g.kind(c1, c2)) << ' '
           << in.members[cd.cells[c1].front()] << ' '
           << in.members[cd.cells[c2].front()] << '\n';
  dump->append(os.str());
}

}  // namespace

PartitionResult partition_and_sort(const SegmentInput& in,
                                   const RefineOptions& opts) {
  PartitionResult out;
  CellDecomposition cd = build_cells(in);
  ClusterStructure cs = build_clusters(cd);
  if (!cs.feasible) {
    out.reason = cs.reason;
    return out;
  }
  DigraphBuild gb = build_cell_digraph(cd, cs);
  if (!gb.feasible) {
    out.reason = gb.reason;
    return out;
  }
  dump_segment(opts.graph_dump, cd.input, cd, gb.g);

  OmegaSets omega = omega_sets(gb.g, cs);
  TwoSatInstance phi = build_split_formula(gb.g, cs, omega);
  auto assignment = solve(phi);
  if (!assignment) {
    out.reason = "cell split formula unsatisfiable";
    return out;
  }

  const int ncells = gb.g.cell_count;
  std::vector<char> minus(ncells, 0), plus(ncells, 0);
  for (int c = 0; c < ncells; ++c)
    (assignment->value[c] ? plus : minus)[c] = 1;

  auto emit = [&](const std::vector<char>& side, bool reversed,
                  std::vector<OrderedCell>& dst) {
    for (int c : topo_order(gb.g, side, reversed)) {
      OrderedCell cell;
      for (int m : cd.cells[c]) cell.members.push_back(in.members[m]);
      for (int a : cd.cells[c])
        for (int b : cd.cells[c])
          if (a != b && cd.has_precede(a, b)) {
            if (reversed)
              cell.seed.emplace_back(in.members[b], in.members[a]);
            else
              cell.seed.emplace_back(in.members[a], in.members[b]);
          }
      dst.push_back(std::move(cell));
    }
  };
  // Plus side: topological order into the right bounding hole. Minus side:
  // dual topological order into the left bounding hole, and the seed
  // precedences flip with it.
  emit(plus, false, out.plus_cells);
  emit(minus, true, out.minus_cells);
  out.feasible = true;
  return out;
}

bool meets_guarantee(const Dissimilarity& d, const TotalOrder& order,
                     double eps) {
  return compatibility_violation(d, order) <= slack::guarantee * eps;
}

namespace {

struct SegmentGroup {
  int left_anchor = 0;
  int right_anchor = 0;
  PartitionResult parts;
};

// Diagnostics relating the placement order on cells to the
// distances; collected on demand only.
void check_placement_diagnostics(const Dissimilarity& d, double eps,
                        const SegmentInput& in, const PartitionResult& parts,
                        RefineStats* stats) {
  if (!stats) return;
  std::vector<double> mid(d.size(), 0.0);
  for (int i = 0; i < in.count(); ++i) mid[in.members[i]] = in.midrange[i];

  std::vector<int> minus_members;
  for (const auto& cell : parts.minus_cells)
    for (int e : cell.members) minus_members.push_back(e);
  for (std::size_t p = 0; p < parts.plus_cells.size(); ++p)
    for (std::size_t q = p + 1; q < parts.plus_cells.size(); ++q)
      for (int y : parts.plus_cells[p].members)
        for (int z : parts.plus_cells[q].members) {
          ++stats->order_checks;
          bool ok = mid[y] <= mid[z] + slack::midrange_gap * eps;
          for (int x : minus_members)
            ok = ok && d(x, y) <= d(x, z) + slack::witness * eps;
          if (!ok) ++stats->order_violations;
        }

  // Placed order across the whole segment: minus cells, then plus cells.
  std::vector<std::pair<int, int>> placed;  // (element, cell tag)
  int tag = 0;
  for (const auto& cell : parts.minus_cells) {
    for (int e : cell.members) placed.emplace_back(e, tag);
    ++tag;
  }
  for (const auto& cell : parts.plus_cells) {
    for (int e : cell.members) placed.emplace_back(e, tag);
    ++tag;
  }
  const int t = static_cast<int>(placed.size());
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      for (int l = j + 1; l < t; ++l) {
        int cells_seen = 1 + (placed[j].second != placed[i].second) +
                         (placed[l].second != placed[j].second &&
                          placed[l].second != placed[i].second);
        if (cells_seen < 2) continue;
        ++stats->order_checks;
        double lhs = d(placed[i].first, placed[l].first);
        double rhs = std::max(d(placed[i].first, placed[j].first),
                              d(placed[j].first, placed[l].first));
        if (!at_least(lhs, rhs, slack::witness, eps))
          ++stats->order_violations;
      }
}

SolveOutcome refine_impl(const Dissimilarity& d, PartialOrderRelation rel,
                         double eps, const RefineOptions& opts, int depth) {
  const int n = d.size();
  if (opts.stats) opts.stats->max_depth = std::max(opts.stats->max_depth, depth);
  if (n <= 1) {
    SolveOutcome out;
    out.feasible = true;
    out.order.perm.assign(n, 0);
    return out;
  }

  auto triples = betweenness_triples(d, eps);
  auto res = close_relation(rel, triples);
  if (!res.ok)
    return {false, {}, "order contradiction", {res.conflict_a, res.conflict_b}};

  // Settle supported holes; each augmentation round grows the relation.
  std::vector<int> chain_elems;
  AdmissibilityInfo info;
  ChainDiagnostics* diag = opts.stats ? &opts.stats->chain : nullptr;
  std::optional<ChainContext> ctx;
  while (true) {
    if (rel.is_total()) break;
    ctx.emplace(build_chain_context(d, rel));
    SupportOutcome support = compute_supported_holes(*ctx, eps, diag);
    if (support.status == SupportOutcome::kSettled) {
      info = std::move(support.info);
      break;
    }
    if (opts.stats) ++opts.stats->augment_rounds;
    int before = rel.related_pairs();
    for (auto [a, b] : support.augment_pairs)
      if (rel.set_before(a, b) ==
          PartialOrderRelation::SetResult::kContradiction)
        return {false, {}, "order contradiction", {a, b}};
    auto closed = close_relation(rel, triples);
    if (!closed.ok)
      return {false,
              {},
              "order contradiction",
              {closed.conflict_a, closed.conflict_b}};
    if (rel.related_pairs() <= before)
      throw internal_error("augmentation made no progress");
    ctx.reset();
  }

  if (rel.is_total()) {
    SolveOutcome out;
    out.feasible = true;
    out.order = rel.to_total_order();
    // Every compatible order extends the relation or its dual, so a total
    // relation that misses the guarantee certifies infeasibility.
    if (!meets_guarantee(d, out.order, eps))
      return {false, {}, "assembled order misses the guarantee", {-1, -1}};
    return out;
  }

  // Segment classes, keyed by anchors.
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int x : ctx->offchain()) {
    const Segment& s = ctx->segment(x);
    groups[{s.left_anchor, s.right_anchor}].push_back(x);
  }

  std::vector<SegmentGroup> seg_results;
  for (auto& [key, members] : groups) {
    SegmentInput in;
    in.d = &d;
    in.eps = eps;
    std::sort(members.begin(), members.end());
    in.members = members;
    for (int e : members) in.midrange.push_back(ctx->segment(e).midrange);
    SegmentGroup sg;
    sg.left_anchor = key.first;
    sg.right_anchor = key.second;
    sg.parts = partition_and_sort(in, opts);
    if (!sg.parts.feasible) return {false, {}, sg.parts.reason, {-1, -1}};
    check_placement_diagnostics(d, eps, in, sg.parts, opts.stats);
    seg_results.push_back(std::move(sg));
  }

  // Recursive order inside one cell.
  auto order_cell = [&](const OrderedCell& cell,
                        std::vector<int>& out) -> SolveOutcome {
    if (cell.members.size() == 1) {
      out.push_back(cell.members.front());
      return {true, {}, "", {-1, -1}};
    }
    if (static_cast<int>(cell.members.size()) >= n)
      throw internal_error("recursive call did not shrink");
    std::vector<int> local(cell.members);  // ascending global ids
    std::vector<int> index_of(n, -1);
    for (std::size_t i = 0; i < local.size(); ++i) index_of[local[i]] = i;
    Dissimilarity sub(static_cast<int>(local.size()));
    for (std::size_t i = 0; i < local.size(); ++i)
      for (std::size_t j = i + 1; j < local.size(); ++j)
        sub.set(i, j, d(local[i], local[j]));
    PartialOrderRelation seed(static_cast<int>(local.size()));
    for (auto [a, b] : cell.seed)
      if (seed.set_before(index_of[a], index_of[b]) ==
          PartialOrderRelation::SetResult::kContradiction)
        return {false, {}, "cell seed contradiction", {a, b}};
    SolveOutcome sub_out = refine_impl(sub, std::move(seed), eps, opts, depth + 1);
    if (!sub_out.feasible) return sub_out;
    for (int p : sub_out.order.perm) out.push_back(local[p]);
    return {true, {}, "", {-1, -1}};
  };

  // Hole plans: in every hole, plus groups (by left anchor descending), then
  // minus groups (by right anchor descending).
  std::vector<int> final_order;
  for (int h = 0; h <= ctx->m(); ++h) {
    std::vector<const SegmentGroup*> plus_here, minus_here;
    for (const auto& sg : seg_results) {
      if (sg.right_anchor == h + 1) plus_here.push_back(&sg);
      if (sg.left_anchor == h) minus_here.push_back(&sg);
    }
    std::sort(plus_here.begin(), plus_here.end(),
              [](const SegmentGroup* a, const SegmentGroup* b) {
                return a->left_anchor > b->left_anchor;
              });
    std::sort(minus_here.begin(), minus_here.end(),
              [](const SegmentGroup* a, const SegmentGroup* b) {
                return a->right_anchor > b->right_anchor;
              });
    for (const auto* sg : plus_here)
      for (const auto& cell : sg->parts.plus_cells) {
        auto sub = order_cell(cell, final_order);
        if (!sub.feasible) return sub;
      }
    for (const auto* sg : minus_here)
      for (const auto& cell : sg->parts.minus_cells) {
        auto sub = order_cell(cell, final_order);
        if (!sub.feasible) return sub;
      }
    if (h < ctx->m()) final_order.push_back(ctx->chain_at(h + 1));
  }

  SolveOutcome out;
  out.feasible = true;
  out.order.perm = std::move(final_order);
  if (!out.order.valid() || out.order.size() != n)
    throw internal_error("assembled order is not a permutation");
  // When some compatible order extends the relation, the machinery above is
  // guaranteed to assemble within sixteen tolerances; missing the bound is
  // therefore a sound infeasibility witness, not an error.
  if (!meets_guarantee(d, out.order, eps))
    return {false, {}, "assembled order misses the guarantee", {-1, -1}};
  return out;
}

}  // namespace

SolveOutcome refine(const Dissimilarity& d, PartialOrderRelation rel,
                    double eps, const RefineOptions& opts) {
  return refine_impl(d, std::move(rel), eps, opts, 0);
}

const char* search_mode_name(SearchMode mode) {
  switch (mode) {
    case SearchMode::kBinary: return "binary";
    case SearchMode::kLinear: return "linear";
    default: return "both";
  }
}

namespace {

struct ProbeResult {
  TraceEntry::Outcome outcome;
  TotalOrder order;
};

ProbeResult probe(const Dissimilarity& d, double eps,
                  const RefineOptions& opts) {
  try {
    CanonicalBuild canon = build_canonical_order(d, eps);
    if (!canon.feasible) return {TraceEntry::kInfeasible, {}};
    SolveOutcome run = refine(d, std::move(canon.rel), eps, opts);
    if (!run.feasible) return {TraceEntry::kInfeasible, {}};
    return {TraceEntry::kFeasible, std::move(run.order)};
  } catch (const internal_error&) {
    return {TraceEntry::kAnomaly, {}};
  }
}

struct SearchResult {
  std::size_t accepted_idx = 0;
  TotalOrder order;
  std::vector<TraceEntry> trace;
  int anomalies = 0;
};

SearchResult run_search(const Dissimilarity& d,
                        const std::vector<double>& deltas, bool binary,
                        const RefineOptions& opts) {
  SearchResult sr;
  auto run = [&](std::size_t idx) {
    ProbeResult pr = probe(d, deltas[idx], opts);
    sr.trace.push_back({deltas[idx], pr.outcome});
    if (pr.outcome == TraceEntry::kAnomaly) ++sr.anomalies;
    return pr;
  };

  if (binary) {
    std::size_t lo = 0, hi = deltas.size() - 1;
    ProbeResult top = run(hi);
    if (top.outcome != TraceEntry::kFeasible)
      throw internal_error("largest candidate error was rejected");
    sr.order = std::move(top.order);
    sr.accepted_idx = hi;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      ProbeResult pr = run(mid);
      if (pr.outcome == TraceEntry::kFeasible) {
        hi = mid;
        sr.order = std::move(pr.order);
        sr.accepted_idx = mid;
      } else {
        lo = mid + 1;
      }
    }
  } else {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      ProbeResult pr = run(i);
      if (pr.outcome == TraceEntry::kFeasible) {
        sr.order = std::move(pr.order);
        sr.accepted_idx = i;
        return sr;
      }
    }
    throw internal_error("largest candidate error was rejected");
  }
  return sr;
}

}  // namespace

FitReport fit(const Dissimilarity& d, SearchMode mode,
              const RefineOptions& opts) {
  FitReport report;
  report.mode = mode;
  if (d.size() == 1) {
    report.result.order.perm = {0};
    report.result.fitted = Dissimilarity(1);
    return report;
  }

  std::vector<double> deltas = candidate_errors(d);
  SearchResult sr =
      run_search(d, deltas, mode != SearchMode::kLinear, opts);
  if (mode == SearchMode::kBoth) {
    SearchResult linear = run_search(d, deltas, false, opts);
    report.modes_agree = linear.accepted_idx == sr.accepted_idx;
    sr.anomalies += linear.anomalies;
  }

  report.result = fit_for_order(d, sr.order);
  report.result.accepted_epsilon = deltas[sr.accepted_idx];
  report.trace = std::move(sr.trace);
  report.anomalies = sr.anomalies;
  if (report.result.achieved_error >
      slack::guarantee * report.result.accepted_epsilon)
    throw internal_error("fit result exceeds the guarantee");
  return report;
}

}  // namespace robinson
