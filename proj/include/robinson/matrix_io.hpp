#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robinson/dissimilarity.hpp"
#include "robinson/solver.hpp"

namespace robinson {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix plus its element labels ("0".."n-1" when the file had none).
struct LabeledMatrix {
  Dissimilarity d;
  std::vector<std::string> labels;
};

/// Text matrix format: '#' comments and blank lines ignored; an optional
/// first line "labels: a b c"; then either n rows of n values (whitespace or
/// comma separated) or the strict lower triangle as rows of 1, 2, ..., n-1
/// values. Square inputs must be symmetric within 1e-12 relative error and
/// have a (near-)zero diagonal; they are then exactly symmetrized.
LabeledMatrix parse_matrix(std::istream& in);
LabeledMatrix parse_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const Dissimilarity& d,
                  const std::vector<std::string>* labels = nullptr);

/// Order file: one label per line.
TotalOrder parse_order(std::istream& in,
                       const std::vector<std::string>& labels);
TotalOrder parse_order_file(const std::string& path,
                            const std::vector<std::string>& labels);
void write_order(std::ostream& out, const TotalOrder& order,
                 const std::vector<std::string>& labels);

/// Binary PPM of the matrix permuted by the order, gray levels min-max
/// normalized. Bytes are a pure function of the inputs.
void write_heatmap_ppm(std::ostream& out, const Dissimilarity& d,
                       const TotalOrder& order);

/// Shortest round-trip decimal text for a double.
std::string format_double(double v);

/// Fit output in line-oriented key/value form or JSON.
struct ResultRecord {
  int n = 0;
  std::vector<std::string> labels;
  std::vector<std::string> permutation;
  double accepted_epsilon = 0.0;
  double achieved_error = 0.0;
  std::string search_mode;
  bool modes_agree = true;
  int anomalies = 0;
  std::vector<TraceEntry> trace;
  bool include_trace = false;
  const Dissimilarity* fitted = nullptr;  // emitted when non-null

  std::string to_text() const;
  std::string to_json() const;
};

ResultRecord make_record(const FitReport& report,
                         const std::vector<std::string>& labels);

}  // namespace robinson
