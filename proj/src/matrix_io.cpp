#include "robinson/matrix_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace robinson {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::string cleaned = line;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream is(cleaned);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_value(const std::string& tok) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw parse_error("bad number: " + tok);
    return v;
  } catch (const std::exception&) {
    throw parse_error("bad number: " + tok);
  }
}

}  // namespace

LabeledMatrix parse_matrix(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first_content = true;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (first_content && toks.front() == "labels:") {
      labels.assign(toks.begin() + 1, toks.end());
      first_content = false;
      continue;
    }
    first_content = false;
    std::vector<double> row;
    for (const auto& t : toks) row.push_back(parse_value(t));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error("no matrix rows");

  int n = 0;
  bool square = rows[0].size() == rows.size();
  if (square) {
    n = static_cast<int>(rows.size());
    for (const auto& r : rows)
      if (r.size() != static_cast<std::size_t>(n))
        throw parse_error("ragged square matrix");
  } else {
    // Strict lower triangle: row k holds k values.
    n = static_cast<int>(rows.size()) + 1;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k].size() != k + 1)
        throw parse_error("rows match neither a square matrix nor a triangle");
  }

  Dissimilarity d(n);
  if (square) {
    double scale = 0.0;
    for (const auto& r : rows)
      for (double v : r) scale = std::max(scale, std::fabs(v));
    double tol = 1e-12 * std::max(scale, 1.0);
    for (int i = 0; i < n; ++i) {
      if (std::fabs(rows[i][i]) > tol)
        throw parse_error("nonzero diagonal entry");
      for (int j = i + 1; j < n; ++j) {
        if (std::fabs(rows[i][j] - rows[j][i]) > tol)
          throw parse_error("matrix not symmetric");
        if (rows[i][j] < 0.0) throw parse_error("negative entry");
        d.set(i, j, rows[i][j]);
      }
    }
  } else {
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        double v = rows[i - 1][j];
        if (v < 0.0) throw parse_error("negative entry");
        d.set(j, i, v);
      }
  }

  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (static_cast<int>(labels.size()) != n)
    throw parse_error("label count does not match matrix size");
  return LabeledMatrix{std::move(d), std::move(labels)};
}

LabeledMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return parse_matrix(in);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix(std::ostream& out, const Dissimilarity& d,
                  const std::vector<std::string>* labels) {
  if (labels) {
    out << "labels:";
    for (const auto& l : *labels) out << ' ' << l;
    out << '\n';
  }
  for (int i = 0; i < d.size(); ++i) {
    for (int j = 0; j < d.size(); ++j) {
      if (j) out << ' ';
      out << format_double(d(i, j));
    }
    out << '\n';
  }
}

TotalOrder parse_order(std::istream& in,
                       const std::vector<std::string>& labels) {
  TotalOrder o;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (toks.size() != 1) throw parse_error("order file: one label per line");
    auto it = std::find(labels.begin(), labels.end(), toks.front());
    if (it == labels.end())
      throw parse_error("order file: unknown label " + toks.front());
    o.perm.push_back(static_cast<int>(it - labels.begin()));
  }
  if (o.perm.size() != labels.size() || !o.valid())
    throw parse_error("order file is not a permutation of the labels");
  return o;
}

TotalOrder parse_order_file(const std::string& path,
                            const std::vector<std::string>& labels) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return parse_order(in, labels);
}

void write_order(std::ostream& out, const TotalOrder& order,
                 const std::vector<std::string>& labels) {
  for (int e : order.perm) out << labels[e] << '\n';
}

void write_heatmap_ppm(std::ostream& out, const Dissimilarity& d,
                       const TotalOrder& order) {
  const int n = d.size();
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = d(i, j);
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  lo = std::min(lo, 0.0);  // diagonal
  out << "P6\n" << n << ' ' << n << "\n255\n";
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      double v = d(order.perm[r], order.perm[c]);
      int g = hi > lo ? static_cast<int>(std::lround(255.0 * (v - lo) /
                                                     (hi - lo)))
                      : 0;
      char byte = static_cast<char>(g);
      out.put(byte).put(byte).put(byte);
    }
}

std::string ResultRecord::to_text() const {
  std::ostringstream os;
  os << "n " << n << '\n';
  os << "labels";
  for (const auto& l : labels) os << ' ' << l;
  os << '\n';
  os << "search_mode " << search_mode << '\n';
  if (search_mode == "both")
    os << "modes_agree " << (modes_agree ? "yes" : "no") << '\n';
  os << "accepted_epsilon " << format_double(accepted_epsilon) << '\n';
  os << "achieved_error " << format_double(achieved_error) << '\n';
  os << "permutation";
  for (const auto& l : permutation) os << ' ' << l;
  os << '\n';
  if (anomalies) os << "anomalies " << anomalies << '\n';
  if (include_trace)
    for (const auto& t : trace)
      os << "trace " << format_double(t.eps) << ' '
         << (t.outcome == TraceEntry::kFeasible
                 ? "feasible"
                 : t.outcome == TraceEntry::kInfeasible ? "infeasible"
                                                        : "anomaly")
         << '\n';
  if (fitted) {
    os << "fitted\n";
    write_matrix(os, *fitted, nullptr);
  }
  return os.str();
}

std::string ResultRecord::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["labels"] = labels;
  j["search_mode"] = search_mode;
  if (search_mode == "both") j["modes_agree"] = modes_agree;
  j["accepted_epsilon"] = accepted_epsilon;
  j["achieved_error"] = achieved_error;
  j["permutation"] = permutation;
  if (anomalies) j["anomalies"] = anomalies;
  if (include_trace) {
    auto arr = nlohmann::json::array();
    for (const auto& t : trace)
      arr.push_back({{"eps", t.eps},
                     {"outcome", t.outcome == TraceEntry::kFeasible
                                     ? "feasible"
                                     : t.outcome == TraceEntry::kInfeasible
                                           ? "infeasible"
                                           : "anomaly"}});
    j["trace"] = arr;
  }
  if (fitted) {
    auto m = nlohmann::json::array();
    for (int r = 0; r < fitted->size(); ++r) {
      auto row = nlohmann::json::array();
      for (int c = 0; c < fitted->size(); ++c) row.push_back((*fitted)(r, c));
      m.push_back(row);
    }
    j["fitted"] = m;
  }
  return j.dump(2) + "\n";
}

ResultRecord make_record(const FitReport& report,
                         const std::vector<std::string>& labels) {
  ResultRecord rec;
  rec.n = report.result.order.size();
  rec.labels = labels;
  for (int e : report.result.order.perm) rec.permutation.push_back(labels[e]);
  rec.accepted_epsilon = report.result.accepted_epsilon;
  rec.achieved_error = report.result.achieved_error;
  rec.search_mode = search_mode_name(report.mode);
  rec.modes_agree = report.modes_agree;
  rec.anomalies = report.anomalies;
  rec.trace = report.trace;
  return rec;
}

}  // namespace robinson
