#pragma once

#include <optional>
#include <string>
#include <vector>

namespace robinson {

/// A literal: variable id plus polarity (true = positive).
struct Literal {
  int var = 0;
  bool positive = true;
};

struct TwoSatInstance {
  int var_count = 0;
  std::vector<std::pair<Literal, Literal>> clauses;

  void add_clause(Literal a, Literal b) { clauses.emplace_back(a, b); }
  /// a == b as two clauses (a v ~b), (~a v b).
  void add_equal(int a, int b);
  /// a != b as two clauses (a v b), (~a v ~b).
  void add_not_equal(int a, int b);

  /// DIMACS-style text (c/p header, 1-based literals) for debugging.
  std::string to_dimacs() const;
};

struct Assignment {
  std::vector<char> value;  // 0/1 per variable
  bool satisfies(const TwoSatInstance& inst) const;
};

/// Satisfying assignment, or nullopt when some variable is equivalent to its
/// own negation. Among valid assignments, greedily prefers false values in
/// ascending variable order so extraction is deterministic.
std::optional<Assignment> solve(const TwoSatInstance& inst);

}  // namespace robinson
