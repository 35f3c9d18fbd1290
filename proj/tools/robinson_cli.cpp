// Command line front end: fit, verify, oracle, gen.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or parse error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "robinson/matrix_io.hpp"
#include "robinson/oracle.hpp"
#include "robinson/solver.hpp"

using namespace robinson;

namespace {

int cmd_fit(const std::string& input, const std::string& search_mode,
            bool emit_fitted, bool trace, bool json,
            const std::string& heatmap_path, const std::string& dump_path) {
  LabeledMatrix m = parse_matrix_file(input);
  SearchMode mode = SearchMode::kBinary;
  if (search_mode == "linear") mode = SearchMode::kLinear;
  if (search_mode == "both") mode = SearchMode::kBoth;

  RefineOptions opts;
  std::string dump;
  if (!dump_path.empty()) opts.graph_dump = &dump;

  FitReport report = fit(m.d, mode, opts);

  ResultRecord rec = make_record(report, m.labels);
  rec.include_trace = trace;
  if (emit_fitted) rec.fitted = &report.result.fitted;
  std::cout << (json ? rec.to_json() : rec.to_text());

  if (!heatmap_path.empty()) {
    std::ofstream hm(heatmap_path, std::ios::binary);
    if (!hm) throw parse_error("cannot write " + heatmap_path);
    write_heatmap_ppm(hm, m.d, report.result.order);
  }
  if (!dump_path.empty()) {
    std::ofstream df(dump_path);
    if (!df) throw parse_error("cannot write " + dump_path);
    df << dump;
  }
  return 0;
}

int cmd_verify(const std::string& input, const std::string& order_path,
               double eps) {
  LabeledMatrix m = parse_matrix_file(input);
  TotalOrder order = parse_order_file(order_path, m.labels);
  double v = compatibility_violation(m.d, order);
  bool ok = v <= eps;
  std::cout << (ok ? "pass" : "fail") << " violation "
            << format_double(v) << '\n';
  return ok ? 0 : 1;
}

int cmd_oracle(const std::string& input) {
  LabeledMatrix m = parse_matrix_file(input);
  if (m.d.size() > 9) {
    std::cerr << "oracle: matrix too large (n <= 9)\n";
    return 2;
  }
  OracleResult res = exact_fit(m.d);
  std::cout << "epsilon_star " << format_double(res.epsilon_star) << '\n';
  std::cout << "witness";
  for (int e : res.witness.perm) std::cout << ' ' << m.labels[e];
  std::cout << '\n';
  return 0;
}

int cmd_gen(int n, double eta, std::uint64_t seed, const std::string& out) {
  PlantedInstance inst = gen_robinson(n, seed);
  Dissimilarity d = eta > 0.0 ? perturb(inst.d, eta, seed + 1) : inst.d;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  {
    std::ofstream f(out);
    if (!f) throw parse_error("cannot write " + out);
    write_matrix(f, d, &labels);
  }
  {
    std::ofstream f(out + ".order");
    if (!f) throw parse_error("cannot write " + out + ".order");
    write_order(f, inst.hidden, labels);
  }
  std::cout << "wrote " << out << " and " << out << ".order\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l-infinity fitting of dissimilarities by Robinsonian ones"};
  app.require_subcommand(1);

  std::string input, order_path, search_mode = "binary";
  std::string heatmap_path, dump_path, out_path = "instance.txt";
  bool emit_fitted = false, trace = false, json = false;
  double eps = 0.0, eta = 0.0;
  int n = 8;
  std::uint64_t seed = 1;

  auto* fit_cmd = app.add_subcommand("fit", "fit a matrix");
  fit_cmd->add_option("input", input, "matrix file")->required();
  fit_cmd->add_option("--search", search_mode, "binary, linear or both")
      ->check(CLI::IsMember({"binary", "linear", "both"}));
  fit_cmd->add_flag("--emit-fitted", emit_fitted, "include the fitted matrix");
  fit_cmd->add_flag("--trace", trace, "include the per-epsilon trace");
  fit_cmd->add_flag("--json", json, "JSON output");
  fit_cmd->add_option("--heatmap", heatmap_path, "write a PPM heatmap");
  fit_cmd->add_option("--dump-graphs", dump_path, "write typed arc dumps");

  auto* verify_cmd = app.add_subcommand("verify", "check an order");
  verify_cmd->add_option("input", input, "matrix file")->required();
  verify_cmd->add_option("order", order_path, "order file")->required();
  verify_cmd->add_option("--eps", eps, "tolerance")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum, n <= 9");
  oracle_cmd->add_option("input", input, "matrix file")->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--n", n, "size")->required();
  gen_cmd->add_option("--eta", eta, "noise bound");
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--out", out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(fit_cmd))
      return cmd_fit(input, search_mode, emit_fitted, trace, json,
                     heatmap_path, dump_path);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(input, order_path, eps);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle(input);
    if (app.got_subcommand(gen_cmd)) return cmd_gen(n, eta, seed, out_path);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
