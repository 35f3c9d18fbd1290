#pragma once

#include <cmath>

namespace robinson {

// Threshold comparisons at slack c*eps. All comparisons are exact IEEE
// double comparisons; callers that need bit-exact ties should pre-scale
// their inputs to an integer or dyadic grid.
inline bool much_less(double a, double b, double c, double eps) {
  return a < b - c * eps;
}
inline bool much_greater(double a, double b, double c, double eps) {
  return a > b + c * eps;
}
inline bool within(double a, double b, double c, double eps) {
  return std::fabs(a - b) <= c * eps;
}
// a >= b up to slack c*eps
inline bool at_least(double a, double b, double c, double eps) {
  return a >= b - c * eps;
}

// Slack multipliers used by the fitting engine. Each value is tied to one
// relation; the constants audit in the acceptance suite straddles each one.
namespace slack {
inline constexpr double compat = 2.0;       // nested-quadruple tolerance
inline constexpr double hole_size = 3.0;    // hole size vs element midrange
inline constexpr double link = 3.0;         // linked / separated split
inline constexpr double midrange_gap = 4.0; // precedence by midrange gap
inline constexpr double link_arc = 5.0;     // symmetric strong-link arcs
inline constexpr double strong_sep = 9.0;   // strong separation
inline constexpr double pair_fit = 12.0;    // pairwise placement tolerance
inline constexpr double witness = 16.0;     // third-element witness gap
inline constexpr double guarantee = 16.0;   // final approximation factor
}  // namespace slack

}  // namespace robinson
