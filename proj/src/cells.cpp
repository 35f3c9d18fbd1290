#include "robinson/cells.hpp"

#include <algorithm>
#include <deque>

#include "robinson/relations.hpp"

namespace robinson {

LinkSets classify_links(const SegmentInput& in) {
  const int k = in.count();
  LinkSets out;
  out.count = k;
  out.linked_m.assign(static_cast<std::size_t>(k) * k, 0);
  out.separated_m.assign(static_cast<std::size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      double hi = std::max(in.midrange[a], in.midrange[b]);
      double v = in.dist(a, b);
      if (much_less(v, hi, slack::link, in.eps))
        out.linked_m[a * k + b] = out.linked_m[b * k + a] = 1;
      else if (much_greater(v, hi, slack::link, in.eps))
        out.separated_m[a * k + b] = out.separated_m[b * k + a] = 1;
    }
  return out;
}

bool must_precede(const SegmentInput& in, const LinkSets& links, int a,
                  int b) {
  if (a == b) return false;
  if (much_less(in.midrange[a], in.midrange[b], slack::midrange_gap, in.eps))
    return true;
  // Midranges close: a third element seen much nearer from a than from b.
  for (int z = 0; z < in.count(); ++z) {
    if (z == a || z == b) continue;
    if (links.linked(a, z) || links.linked(b, z)) continue;
    if (much_less(in.dist(a, z), in.dist(b, z), slack::witness, in.eps))
      return true;
  }
  return false;
}

bool CellDecomposition::cell_precede(int c1, int c2) const {
  for (int a : cells[c1])
    for (int b : cells[c2])
      if (has_precede(a, b)) return true;
  return false;
}

namespace {

// SCCs of a small digraph, iterative Tarjan; components renumbered so that
// cell ids follow the smallest member they contain.
std::vector<int> strongly_connected(int k,
                                    const std::vector<char>& adj) {
  std::vector<int> index(k, -1), low(k, 0), comp(k, -1), stack;
  std::vector<char> on(k, 0);
  int counter = 0, ncomp = 0;
  struct Frame {
    int v, next;
  };
  for (int root = 0; root < k; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!frames.empty()) {
      auto& fr = frames.back();
      int v = fr.v;
      if (fr.next < k) {
        int w = fr.next++;
        if (!adj[v * k + w]) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          frames.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  // Renumber by smallest member.
  std::vector<int> first(ncomp, k);
  for (int v = 0; v < k; ++v) first[comp[v]] = std::min(first[comp[v]], v);
  std::vector<int> order(ncomp);
  for (int c = 0; c < ncomp; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return first[a] < first[b]; });
  std::vector<int> rank(ncomp);
  for (int i = 0; i < ncomp; ++i) rank[order[i]] = i;
  for (int v = 0; v < k; ++v) comp[v] = rank[comp[v]];
  return comp;
}

std::vector<std::vector<int>> group_by(const std::vector<int>& label, int k,
                                       int groups) {
  std::vector<std::vector<int>> out(groups);
  for (int v = 0; v < k; ++v) out[label[v]].push_back(v);
  return out;
}

}  // namespace

CellDecomposition build_cells(SegmentInput in) {
  CellDecomposition cd;
  cd.links = classify_links(in);
  const int k = in.count();

  cd.precede.assign(static_cast<std::size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b && must_precede(in, cd.links, a, b))
        cd.precede[a * k + b] = 1;

  // Blocks: connected components of the linked relation, labeled by their
  // smallest member.
  cd.block_of.assign(k, -1);
  int nblocks = 0;
  for (int s = 0; s < k; ++s) {
    if (cd.block_of[s] != -1) continue;
    std::deque<int> queue{s};
    cd.block_of[s] = nblocks;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < k; ++w)
        if (cd.block_of[w] == -1 && cd.links.linked(v, w)) {
          cd.block_of[w] = nblocks;
          queue.push_back(w);
        }
    }
    ++nblocks;
  }
  cd.blocks = group_by(cd.block_of, k, nblocks);

  std::vector<char> adj(static_cast<std::size_t>(k) * k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a == b) continue;
      bool strong = much_less(in.dist(a, b),
                              std::max(in.midrange[a], in.midrange[b]),
                              slack::link_arc, in.eps);
      bool directed = cd.precede[a * k + b] && cd.block_of[a] == cd.block_of[b];
      if (strong && !cd.links.linked(a, b))
        throw internal_error("strong-link arc between unlinked elements");
      if (strong || directed) {
        adj[a * k + b] = 1;
        cd.arcs.emplace_back(a, b);
      }
    }

  cd.cell_of = strongly_connected(k, adj);
  int ncells =
      k == 0 ? 0
             : 1 + *std::max_element(cd.cell_of.begin(), cd.cell_of.end());
  cd.cells = group_by(cd.cell_of, k, ncells);

  for (const auto& cell : cd.cells) {
    for (int v : cell)
      if (cd.block_of[v] != cd.block_of[cell.front()])
        throw internal_error("cell spans two blocks");
  }

  // Condensation order (Kahn, smallest cell id first).
  std::vector<char> carc(static_cast<std::size_t>(ncells) * ncells, 0);
  for (auto [a, b] : cd.arcs)
    if (cd.cell_of[a] != cd.cell_of[b])
      carc[cd.cell_of[a] * ncells + cd.cell_of[b]] = 1;
  std::vector<int> indeg(ncells, 0);
  for (int c1 = 0; c1 < ncells; ++c1)
    for (int c2 = 0; c2 < ncells; ++c2)
      if (carc[c1 * ncells + c2]) ++indeg[c2];
  std::vector<char> used(ncells, 0);
  for (int step = 0; step < ncells; ++step) {
    int pick = -1;
    for (int c = 0; c < ncells; ++c)
      if (!used[c] && indeg[c] == 0) {
        pick = c;
        break;
      }
    if (pick == -1) throw internal_error("cell condensation cyclic");
    used[pick] = 1;
    cd.cell_topo.push_back(pick);
    for (int c = 0; c < ncells; ++c)
      if (!used[c] && carc[pick * ncells + c]) --indeg[c];
  }

  cd.input = std::move(in);
  return cd;
}

ClusterStructure build_clusters(const CellDecomposition& cd) {
  ClusterStructure cs;
  const int nblocks = static_cast<int>(cd.blocks.size());
  const int ncells = static_cast<int>(cd.cells.size());
  const int k = cd.input.count();

  // Separation witnessed at block level: either a separated element pair, or
  // a pair of cells with constraints pointing both ways across the blocks.
  std::vector<char> cell_arrow(static_cast<std::size_t>(ncells) * ncells, 0);
  for (int c1 = 0; c1 < ncells; ++c1)
    for (int c2 = 0; c2 < ncells; ++c2)
      if (c1 != c2 && cd.cell_precede(c1, c2))
        cell_arrow[c1 * ncells + c2] = 1;

  std::vector<char> bsep(static_cast<std::size_t>(nblocks) * nblocks, 0);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (cd.links.separated(a, b)) {
        int ba = cd.block_of[a], bb = cd.block_of[b];
        if (ba == bb) {
          cs.feasible = false;
          cs.reason = "pair both linked and separated";
          return cs;
        }
        bsep[ba * nblocks + bb] = bsep[bb * nblocks + ba] = 1;
      }
  for (int c1 = 0; c1 < ncells; ++c1)
    for (int c2 = c1 + 1; c2 < ncells; ++c2) {
      if (!cell_arrow[c1 * ncells + c2] || !cell_arrow[c2 * ncells + c1])
        continue;
      int b1 = cd.block_of[cd.cells[c1].front()];
      int b2 = cd.block_of[cd.cells[c2].front()];
      if (b1 == b2)
        throw internal_error("two-way constraints between cells of one block");
      bsep[b1 * nblocks + b2] = bsep[b2 * nblocks + b1] = 1;
    }

  // Two-color the block separation graph per component.
  std::vector<int> color(nblocks, -1), comp(nblocks, -1);
  int ncomp = 0;
  for (int s = 0; s < nblocks; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = ncomp;
    color[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < nblocks; ++w) {
        if (!bsep[v * nblocks + w]) continue;
        if (comp[w] == -1) {
          comp[w] = ncomp;
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          cs.feasible = false;
          cs.reason = "separation graph not bipartite";
          return cs;
        }
      }
    }
    ++ncomp;
  }

  cs.cluster_of_cell.assign(ncells, -1);
  for (int c = 0; c < ncomp; ++c) {
    int side[2] = {-1, -1};
    for (int col = 0; col < 2; ++col) {
      bool any = false;
      for (int b = 0; b < nblocks && !any; ++b)
        any = comp[b] == c && color[b] == col && !cd.blocks[b].empty();
      if (any) {
        side[col] = cs.cluster_count++;
        cs.cluster_cells.emplace_back();
        cs.twin_of.push_back(-1);
        cs.principal.push_back(0);
      }
    }
    if (side[0] != -1 && side[1] != -1) {
      cs.twin_of[side[0]] = side[1];
      cs.twin_of[side[1]] = side[0];
    }
    for (int cell = 0; cell < ncells; ++cell) {
      int b = cd.block_of[cd.cells[cell].front()];
      if (comp[b] == c) {
        int cl = side[color[b]];
        cs.cluster_of_cell[cell] = cl;
        cs.cluster_cells[cl].push_back(cell);
      }
    }
    if (side[0] != -1 && side[1] != -1) {
      bool strong = false;
      for (int x : cs.cluster_cells[side[0]])
        for (int a : cd.cells[x]) {
          for (int y : cs.cluster_cells[side[1]])
            for (int b : cd.cells[y])
              if (much_greater(
                      cd.input.dist(a, b),
                      std::max(cd.input.midrange[a], cd.input.midrange[b]),
                      slack::strong_sep, cd.input.eps)) {
                strong = true;
              }
        }
      cs.principal[side[0]] = cs.principal[side[1]] = strong ? 1 : 0;
    }
  }
  return cs;
}

std::vector<std::pair<int, int>> CellDigraph::arcs_of_kind(ArcKind k) const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < cell_count; ++a)
    for (int b = 0; b < cell_count; ++b)
      if (kind(a, b) == k) out.emplace_back(a, b);
  return out;
}

namespace {

// Directed cycle test restricted to the cells marked in `keep` and arcs
// matching `pred`.
template <typename Pred>
bool has_cycle(const CellDigraph& g, const std::vector<char>& keep,
               Pred pred) {
  const int n = g.cell_count;
  std::vector<int> state(n, 0);  // 0 fresh, 1 active, 2 done
  struct Frame {
    int v, next;
  };
  for (int root = 0; root < n; ++root) {
    if (!keep[root] || state[root]) continue;
    std::vector<Frame> frames{{root, 0}};
    state[root] = 1;
    while (!frames.empty()) {
      auto& fr = frames.back();
      if (fr.next < n) {
        int w = fr.next++;
        if (!keep[w] || !pred(g.kind(fr.v, w))) continue;
        if (state[w] == 1) return true;
        if (state[w] == 0) {
          state[w] = 1;
          frames.push_back({w, 0});
        }
      } else {
        state[fr.v] = 2;
        frames.pop_back();
      }
    }
  }
  return false;
}

}  // namespace

DigraphBuild build_cell_digraph(const CellDecomposition& cd,
                                const ClusterStructure& cs) {
  DigraphBuild out;
  const int ncells = static_cast<int>(cd.cells.size());
  out.g.cell_count = ncells;
  out.g.kind_m.assign(static_cast<std::size_t>(ncells) * ncells,
                      ArcKind::kNone);
  const auto& in = cd.input;
  auto set_kind = [&](int a, int b, ArcKind kk) {
    out.g.kind_m[a * ncells + b] = kk;
  };

  auto gap_arc = [&](int tail, int head) {
    for (int a : cd.cells[head])
      for (int b : cd.cells[tail])
        if (much_less(in.midrange[b], in.midrange[a], slack::midrange_gap,
                      in.eps))
          return true;
    return false;
  };
  auto witness_arc = [&](int tail, int head) {
    for (int a : cd.cells[head])
      for (int b : cd.cells[tail])
        for (int z = 0; z < in.count(); ++z) {
          if (z == a || z == b) continue;
          if (cd.links.linked(a, z) || cd.links.linked(b, z)) continue;
          if (much_less(in.dist(b, z), in.dist(a, z), slack::witness, in.eps))
            return true;
        }
    return false;
  };

  for (int c1 = 0; c1 < ncells; ++c1)
    for (int c2 = c1 + 1; c2 < ncells; ++c2) {
      int k1 = cs.cluster_of_cell[c1], k2 = cs.cluster_of_cell[c2];
      if (k1 != -1 && cs.twin_of[k1] == k2) {
        set_kind(c1, c2, ArcKind::kTwin);
        set_kind(c2, c1, ArcKind::kTwin);
        continue;
      }
      bool g12 = gap_arc(c1, c2), g21 = gap_arc(c2, c1);
      if (g12) set_kind(c1, c2, ArcKind::kMidrange);
      if (g21) set_kind(c2, c1, ArcKind::kMidrange);
      if (g12 || g21) continue;
      if (witness_arc(c1, c2)) set_kind(c1, c2, ArcKind::kWitness);
      if (witness_arc(c2, c1)) set_kind(c2, c1, ArcKind::kWitness);
    }

  std::vector<char> all(ncells, 1);
  if (has_cycle(out.g, all,
                [](ArcKind k) { return k == ArcKind::kWitness; })) {
    out.feasible = false;
    out.reason = "witness-arc cycle";
    return out;
  }
  if (has_cycle(out.g, all,
                [](ArcKind k) { return k == ArcKind::kMidrange; }))
    throw internal_error("gap-arc cycle in cell digraph");
  for (int cl = 0; cl < cs.cluster_count; ++cl) {
    std::vector<char> keep(ncells, 0);
    for (int c : cs.cluster_cells[cl]) keep[c] = 1;
    if (has_cycle(out.g, keep, [](ArcKind k) { return k != ArcKind::kNone; })) {
      out.feasible = false;
      out.reason = "cycle inside a cluster";
      return out;
    }
  }
  return out;
}

std::optional<std::vector<int>> find_mixed_cycle(const CellDigraph& g,
                                                 const ClusterStructure& cs,
                                                 std::vector<int> fixed,
                                                 int cluster) {
  const int n = g.cell_count;
  const int f0 = fixed.front(), last = fixed.back();
  if (cs.cluster_of_cell[f0] != cluster) return std::nullopt;

  std::vector<char> in_cluster(n, 0);
  for (int c : cs.cluster_cells[cluster]) in_cluster[c] = 1;

  // Candidate interior cells: cluster members that cannot be chord targets
  // of the fixed part.
  std::vector<char> ok(n, 0);
  for (int w = 0; w < n; ++w) {
    if (!in_cluster[w]) continue;
    if (std::find(fixed.begin(), fixed.end(), w) != fixed.end()) continue;
    bool excluded = false;
    for (std::size_t i = 0; i + 1 < fixed.size() && !excluded; ++i) {
      ArcKind k = g.kind(fixed[i], w);
      if (k == ArcKind::kMidrange || k == ArcKind::kWitness) excluded = true;
    }
    for (std::size_t i = 1; i < fixed.size() && !excluded; ++i)
      if (g.has_arc(w, fixed[i])) excluded = true;
    if (!excluded) ok[w] = 1;
  }

  // Degenerate return path: one witness arc straight back.
  if (fixed.size() >= 3 && g.kind(last, f0) == ArcKind::kWitness) return fixed;

  std::vector<int> starts, ends;
  for (int w = 0; w < n; ++w) {
    if (!ok[w]) continue;
    if (g.kind(last, w) == ArcKind::kWitness) starts.push_back(w);
    if (g.kind(w, f0) == ArcKind::kWitness) ends.push_back(w);
  }
  if (starts.empty() || ends.empty()) return std::nullopt;

  int best_len = -1;
  std::vector<int> best_path;
  for (int s : starts) {
    // BFS inside the filtered cluster cells.
    std::vector<int> dist(n, -1), parent(n, -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < n; ++w)
        if (ok[w] && dist[w] == -1 && g.has_arc(v, w)) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    for (int e : ends) {
      if (dist[e] == -1) continue;
      int len = dist[e];
      if (best_len == -1 || len < best_len) {
        best_len = len;
        best_path.clear();
        for (int v = e; v != -1; v = parent[v]) best_path.push_back(v);
        std::reverse(best_path.begin(), best_path.end());
      }
    }
  }
  if (best_len == -1) return std::nullopt;
  std::vector<int> cycle = fixed;
  cycle.insert(cycle.end(), best_path.begin(), best_path.end());
  return cycle;
}

OmegaSets omega_sets(const CellDigraph& g, const ClusterStructure& cs) {
  const int n = g.cell_count;
  OmegaSets out;
  out.single_in.assign(n, {});
  out.double_in.assign(n, {});
  out.double_out.assign(n, {});
  auto gap_arcs = g.arcs_of_kind(ArcKind::kMidrange);

  auto add_unique = [](std::vector<std::pair<int, int>>& v,
                       std::pair<int, int> arc) {
    if (std::find(v.begin(), v.end(), arc) == v.end()) v.push_back(arc);
  };

  for (auto [a, b] : gap_arcs) {
    for (int cl = 0; cl < cs.cluster_count; ++cl) {
      if (cs.cluster_of_cell[a] != cl) continue;
      if (cs.cluster_of_cell[b] != cl &&
          find_mixed_cycle(g, cs, {a, b}, cl))
        add_unique(out.single_in[b], {a, b});
      for (auto [b2, c] : gap_arcs) {
        if (b2 != b || c == a) continue;
        if (cs.cluster_of_cell[b] == cl) {
          if (find_mixed_cycle(g, cs, {a, b, c}, cl))
            add_unique(out.double_out[b], {b, c});
        } else {
          if (find_mixed_cycle(g, cs, {a, b, c}, cl))
            add_unique(out.double_in[b], {a, b});
        }
      }
    }
  }
  return out;
}

}  // namespace robinson
