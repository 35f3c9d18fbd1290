#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robinson/dissimilarity.hpp"

namespace robinson {

/// Everything the per-segment machinery needs about one segment class: the
/// elements sharing a hole interval, their midranges, and the tolerance.
struct SegmentInput {
  const Dissimilarity* d = nullptr;
  double eps = 0.0;
  std::vector<int> members;       // global element ids, ascending
  std::vector<double> midrange;   // parallel to members

  int count() const { return static_cast<int>(members.size()); }
  double dist(int a, int b) const { return (*d)(members[a], members[b]); }
};

/// Linked / separated classification over member-index pairs.
struct LinkSets {
  int count = 0;
  std::vector<char> linked_m, separated_m;  // count*count matrices

  bool linked(int a, int b) const { return linked_m[a * count + b] != 0; }
  bool separated(int a, int b) const {
    return separated_m[a * count + b] != 0;
  }
};

LinkSets classify_links(const SegmentInput& in);

/// Directional constraint: a must come before b whenever both land right of
/// the segment's left inner anchor (and after b in the mirrored case).
bool must_precede(const SegmentInput& in, const LinkSets& links, int a, int b);

struct CellDecomposition {
  SegmentInput input;
  LinkSets links;
  std::vector<char> precede;               // member-index matrix
  std::vector<int> block_of, cell_of;      // per member index
  std::vector<std::vector<int>> blocks, cells;  // member indices, ascending
  std::vector<std::pair<int, int>> arcs;   // strong-link digraph arcs
  std::vector<int> cell_topo;              // condensation order of cells

  bool has_precede(int a, int b) const {
    return precede[a * input.count() + b] != 0;
  }
  bool cell_precede(int c1, int c2) const;  // some member arrow across cells
};

CellDecomposition build_cells(SegmentInput in);

struct ClusterStructure {
  bool feasible = true;
  std::string reason;
  int cluster_count = 0;
  std::vector<int> cluster_of_cell;
  std::vector<int> twin_of;             // cluster id or -1
  std::vector<char> principal;          // per cluster
  std::vector<std::vector<int>> cluster_cells;
};

ClusterStructure build_clusters(const CellDecomposition& cd);

enum class ArcKind : char { kNone = 0, kTwin, kMidrange, kWitness };

struct CellDigraph {
  int cell_count = 0;
  std::vector<ArcKind> kind_m;  // cell_count^2

  ArcKind kind(int from, int to) const {
    return kind_m[from * cell_count + to];
  }
  bool has_arc(int from, int to) const {
    return kind(from, to) != ArcKind::kNone;
  }
  std::vector<std::pair<int, int>> arcs_of_kind(ArcKind k) const;
};

struct DigraphBuild {
  bool feasible = true;
  std::string reason;
  CellDigraph g;
};

DigraphBuild build_cell_digraph(const CellDecomposition& cd,
                                const ClusterStructure& cs);

/// Looks for an induced mixed cycle that starts with the given chain of
/// gap arcs (tail-to-head order) and returns to its first cell through
/// witness arcs whose intermediate cells all lie in the given cluster. The
/// first and last arcs of the return path are witness arcs. Returns the full
/// cycle, shortest first, smallest cell ids on ties.
std::optional<std::vector<int>> find_mixed_cycle(const CellDigraph& g,
                                                 const ClusterStructure& cs,
                                                 std::vector<int> fixed,
                                                 int cluster);

/// Per-cell lists of gap arcs forced across the split by mixed cycles:
/// single_in = arcs into the cell closing a one-gap cycle, double_in = arcs
/// into the cell from two-gap cycles avoiding its cluster, double_out = arcs
/// out of the cell from two-gap cycles through its cluster.
struct OmegaSets {
  std::vector<std::vector<std::pair<int, int>>> single_in, double_in,
      double_out;
};

OmegaSets omega_sets(const CellDigraph& g, const ClusterStructure& cs);

}  // namespace robinson
