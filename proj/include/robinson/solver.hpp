#pragma once

#include <string>
#include <vector>

#include "robinson/cells.hpp"
#include "robinson/chain.hpp"
#include "robinson/dissimilarity.hpp"
#include "robinson/partial_order.hpp"
#include "robinson/twosat.hpp"

namespace robinson {

/// Counters for the structural side conditions the theory promises on
/// feasible runs. Collected when requested; never aborts a run.
struct RefineStats {
  ChainDiagnostics chain;
  long long order_checks = 0;
  long long order_violations = 0;
  long long augment_rounds = 0;
  int max_depth = 0;
};

struct RefineOptions {
  RefineStats* stats = nullptr;
  std::string* graph_dump = nullptr;  // typed arc lines, one per arc
};

struct SolveOutcome {
  bool feasible = false;
  TotalOrder order;
  std::string reason;
  std::pair<int, int> conflict{-1, -1};
};

/// Variables are cells; clauses pin same-cluster cells together, twin
/// clusters apart, and split the endpoints of every mixed-cycle gap arc.
TwoSatInstance build_split_formula(const CellDigraph& g,
                                   const ClusterStructure& cs,
                                   const OmegaSets& omega);

/// One cell scheduled into a hole: its members (global ids) and the seed
/// precedence pairs for the recursive call, already oriented for the side
/// the cell landed on.
struct OrderedCell {
  std::vector<int> members;
  std::vector<std::pair<int, int>> seed;
};

struct PartitionResult {
  bool feasible = false;
  std::string reason;
  std::vector<OrderedCell> minus_cells;  // left bounding hole, left to right
  std::vector<OrderedCell> plus_cells;   // right bounding hole, left to right
};

PartitionResult partition_and_sort(const SegmentInput& in,
                                   const RefineOptions& opts = {});

/// Recursive ordering: closes the relation, extracts a chain, settles the
/// supported holes, splits every segment class via the 2-SAT formula and
/// recurses into cells. Returns a total order or reports that no
/// eps-compatible order extends the relation (hence none exists at all).
SolveOutcome refine(const Dissimilarity& d, PartialOrderRelation rel,
                    double eps, const RefineOptions& opts = {});

/// The final guarantee: the order is (16*eps)-compatible with d.
bool meets_guarantee(const Dissimilarity& d, const TotalOrder& order,
                     double eps);

enum class SearchMode { kBinary, kLinear, kBoth };

struct TraceEntry {
  double eps = 0.0;
  enum Outcome { kFeasible, kInfeasible, kAnomaly } outcome = kFeasible;
};

struct FitReport {
  FitResult result;
  SearchMode mode = SearchMode::kBinary;
  std::vector<TraceEntry> trace;
  int anomalies = 0;
  bool modes_agree = true;  // meaningful for SearchMode::kBoth
};

/// Searches the candidate error list for the smallest value the engine
/// accepts and returns the optimal fit for the order found there. The
/// largest candidate always succeeds, so the search is total.
FitReport fit(const Dissimilarity& d, SearchMode mode = SearchMode::kBinary,
              const RefineOptions& opts = {});

const char* search_mode_name(SearchMode mode);

}  // namespace robinson
