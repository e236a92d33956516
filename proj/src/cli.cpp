#include "bnp/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnp/analyze.hpp"
#include "bnp/jsonio.hpp"
#include "bnp/parametrize.hpp"
#include "bnp/solvability.hpp"

namespace bnp {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidData("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_double(const std::string& text) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidData("not a number: " + text);
  }
  if (used != text.size()) throw InvalidData("not a number: " + text);
  return v;
}

Complex parse_complex_pair(const std::string& text) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_double(text), 0.0);
  return Complex(parse_double(text.substr(0, comma)),
                 parse_double(text.substr(comma + 1)));
}

SchurParameter parse_param_spec(const std::string& spec) {
  if (spec.rfind("const:", 0) == 0)
    return SchurParameter::constant(parse_complex_pair(spec.substr(6)));
  if (spec.rfind("blaschke:", 0) == 0) {
    std::string rest = spec.substr(9);
    Complex phase(1.0);
    const size_t at = rest.find('@');
    if (at != std::string::npos) {
      phase = std::polar(1.0, parse_double(rest.substr(at + 1)));
      rest = rest.substr(0, at);
    }
    std::vector<Complex> zeros;
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t next = rest.find(';', pos);
      if (next == std::string::npos) next = rest.size();
      if (next > pos) zeros.push_back(parse_complex_pair(rest.substr(pos, next - pos)));
      pos = next + 1;
    }
    return SchurParameter::blaschke_product(zeros, phase);
  }
  if (spec.rfind("file:", 0) == 0)
    return SchurParameter::rational(parse_rational_json(read_file(spec.substr(5))));
  throw InvalidData("unknown parameter spec: " + spec +
                    " (expected const:..., blaschke:... or file:...)");
}

// Parameter problems are usage errors, not numerical failures.
SchurParameter parse_param_checked(const std::string& spec) {
  try {
    return parse_param_spec(spec);
  } catch (const InvalidData&) {
    throw;
  } catch (const Error& e) {
    throw InvalidData(e.what());
  }
}

void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << payload << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InvalidData("cannot write file: " + out_path);
  f << payload << "\n";
}

// Pointwise Schur-class test of w on interior circles; angles scales with the
// requested grid size.
bool schur_on_grid(const RationalFunction& w, int grid) {
  const int angles = std::max(16, grid / 4);
  for (double r : {0.3, 0.6, 0.9}) {
    for (int a = 0; a < angles; ++a) {
      const Complex z =
          r * std::polar(1.0, 2.0 * std::numbers::pi * (a + 0.25) / angles);
      try {
        if (std::abs(rat_eval(w, z)) > 1.0 + 1e-8) return false;
      } catch (const PoleAtPoint&) {
        return false;
      }
    }
  }
  return true;
}

struct CommonOptions {
  double tol_psd = 1e-9;
  double tol_rank = 1e-9;
  int grid = 512;
  int radial_steps = 8;
  std::string out_path;
};

int run_check(const std::string& problem_path, const CommonOptions& opt,
              std::ostream& out) {
  const ProblemData data = parse_problem_json(read_file(problem_path));
  const SolvabilityReport report =
      solvability_report(data, opt.tol_psd, opt.tol_rank);
  emit(json_report(report), opt.out_path, out);
  return report.admissible && report.psd ? 0 : 2;
}

// Returns the built system when the problem is solvable, otherwise reports on
// err and leaves the result empty.
std::optional<PickSystem> gate_solvable(const ProblemData& data,
                                        const CommonOptions& opt, std::ostream& err) {
  const SolvabilityReport report =
      solvability_report(data, opt.tol_psd, opt.tol_rank);
  if (!report.admissible || !report.psd) {
    err << json_report(report) << "\n";
    return std::nullopt;
  }
  return build_pick_system(data, opt.tol_rank);
}

int run_coeffs(const std::string& problem_path, const CommonOptions& opt,
               std::ostream& out, std::ostream& err) {
  const ProblemData data = parse_problem_json(read_file(problem_path));
  const auto sys = gate_solvable(data, opt, err);
  if (!sys) return 2;
  if (sys->singular) {
    const SingularSolution unique = singular_solution(*sys);
    std::string payload = "{\"singular\":true,\"rank\":" + std::to_string(sys->rank) +
                          ",\"degree\":" + std::to_string(unique.degree) +
                          ",\"w\":" + json_rational(unique.w) + "}";
    emit(payload, opt.out_path, out);
    return 0;
  }
  const CoefficientMatrix cm = coefficient_matrix_rational(*sys);
  emit(json_coefficient_matrix(cm, *sys->alpha, *sys->beta), opt.out_path, out);
  return 0;
}

int run_solve(const std::string& problem_path, const std::string& param_spec,
              const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  const ProblemData data = parse_problem_json(read_file(problem_path));
  const SchurParameter param = parse_param_checked(param_spec);
  const auto sys = gate_solvable(data, opt, err);
  if (!sys) return 2;
  const Solution sol = solve(*sys, param);
  for (const std::string& msg : sol.diagnostics) err << msg << "\n";
  emit(json_rational(sol.w), opt.out_path, out);
  return 0;
}

int run_verify(const std::string& problem_path, const std::string& w_path,
               const CommonOptions& opt, std::ostream& out) {
  const ProblemData data = parse_problem_json(read_file(problem_path));
  const RationalFunction w = parse_rational_json(read_file(w_path));
  bool solves = schur_on_grid(w, opt.grid);
  std::string nodes_json = "[";
  for (size_t i = 0; i < data.nodes.size(); ++i) {
    const auto& node = data.nodes[i];
    if (i > 0) nodes_json += ",";
    nodes_json += "{\"index\":" + std::to_string(i);
    bool have_jet = true;
    bool unimodular = false;
    double max_err = 0.0;
    double d = std::numeric_limits<double>::quiet_NaN();
    try {
      const Jet jet = rat_taylor(w, node.t(), 2 * node.n() + 1);
      const auto& expected = node.c();
      for (size_t j = 0; j < static_cast<size_t>(2 * node.n() + 1); ++j)
        max_err = std::max(max_err, std::abs(jet.coeffs[j] - expected[j]) /
                                        (1.0 + std::abs(expected[j])));
      unimodular = std::fabs(std::abs(jet.coeffs[0]) - 1.0) <= 1e-6;
      d = node_block(node.t(), node.n(), jet.coeffs)(node.n(), node.n()).real();
    } catch (const Error&) {
      have_jet = false;
    }
    const bool jet_match = have_jet && unimodular && max_err <= 1e-6;
    nodes_json += ",\"unimodular\":";
    nodes_json += unimodular ? "true" : "false";
    nodes_json += ",\"jet_max_rel_err\":" +
                  (have_jet ? format_number(max_err) : json_string("nan"));
    nodes_json += ",\"jet_match\":";
    nodes_json += jet_match ? "true" : "false";
    const double gamma = node.gamma_value();
    nodes_json += ",\"gamma\":" + format_number(gamma);
    if (have_jet) {
      const double gap_value = gamma - d;
      const bool gap_ok = gap_value >= -1e-8 * (1.0 + std::fabs(gamma));
      nodes_json += ",\"d\":" + format_number(d);
      nodes_json += ",\"gap\":" + format_number(gap_value);
      nodes_json += ",\"gap_ok\":";
      nodes_json += gap_ok ? "true" : "false";
      solves = solves && jet_match && gap_ok;
    } else {
      nodes_json += ",\"d\":" + json_string("nan");
      nodes_json += ",\"gap\":" + json_string("nan");
      nodes_json += ",\"gap_ok\":false";
      solves = false;
    }
    nodes_json += "}";
  }
  nodes_json += "]";
  std::string payload = "{\"solves\":";
  payload += solves ? "true" : "false";
  payload += ",\"nodes\":" + nodes_json + "}";
  emit(payload, opt.out_path, out);
  return solves ? 0 : 2;
}

int run_gap(const std::string& problem_path, const std::string& param_spec,
            int node_index, const CommonOptions& opt, std::ostream& out,
            std::ostream& err) {
  const ProblemData data = parse_problem_json(read_file(problem_path));
  if (node_index < 0 || node_index >= static_cast<int>(data.nodes.size()))
    throw InvalidData("node index out of range");
  const SchurParameter param = parse_param_checked(param_spec);
  const auto sys = gate_solvable(data, opt, err);
  if (!sys) return 2;
  if (sys->singular) {
    err << "{\"error\":\"Pick matrix is singular: the solution is unique and no "
           "parameter family exists\"}"
        << "\n";
    return 2;
  }
  const CoefficientMatrix cm = coefficient_matrix_rational(*sys);
  const GapResult g =
      gap(*sys, cm, param, node_index, RadialSchedule::geometric(opt.radial_steps));
  const bool equal = classify_equality(
      param, cm, data.nodes[static_cast<size_t>(node_index)].t());
  std::string payload = "{\"node\":" + std::to_string(node_index);
  payload += ",\"gamma\":" + format_number(
                                 data.nodes[static_cast<size_t>(node_index)]
                                     .gamma_value());
  payload += ",\"direct\":" + json_limit(g.direct);
  payload += ",\"formula\":" + format_number(g.formula);
  payload += ",\"equality\":";
  payload += equal ? "true" : "false";
  payload += "}";
  emit(payload, opt.out_path, out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary interpolation in the Schur class"};
  app.require_subcommand(1);

  CommonOptions opt;
  app.add_option("--tol-psd", opt.tol_psd, "Positive semidefiniteness tolerance");
  app.add_option("--tol-rank", opt.tol_rank, "Numerical rank tolerance");
  app.add_option("--grid", opt.grid, "Circle grid size for pointwise checks");
  app.add_option("--radial-steps", opt.radial_steps,
                 "Number of radial offsets 1e-1..1e-steps");
  app.add_option("--out", opt.out_path, "Write the JSON result to this file");

  std::string problem_path, param_spec, w_path;
  int node_index = 0;

  auto* check = app.add_subcommand("check", "Report solvability of a problem");
  check->add_option("problem", problem_path, "Problem JSON file")->required();
  check->fallthrough();

  auto* coeffs =
      app.add_subcommand("coeffs", "Coefficient matrix of the solution family");
  coeffs->add_option("problem", problem_path, "Problem JSON file")->required();
  coeffs->fallthrough();

  auto* solve_cmd = app.add_subcommand("solve", "Solution for a parameter");
  solve_cmd->add_option("problem", problem_path, "Problem JSON file")->required();
  solve_cmd->add_option("--param", param_spec, "Parameter spec")->required();
  solve_cmd->fallthrough();

  auto* verify =
      app.add_subcommand("verify", "Verify a candidate solution against the data");
  verify->add_option("problem", problem_path, "Problem JSON file")->required();
  verify->add_option("--w", w_path, "Candidate rational function JSON file")
      ->required();
  verify->fallthrough();

  auto* gap_cmd = app.add_subcommand("gap", "Limit defect at one node");
  gap_cmd->add_option("problem", problem_path, "Problem JSON file")->required();
  gap_cmd->add_option("--param", param_spec, "Parameter spec")->required();
  gap_cmd->add_option("--node", node_index, "Node index")->required();
  gap_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return run_check(problem_path, opt, out);
    if (coeffs->parsed()) return run_coeffs(problem_path, opt, out, err);
    if (solve_cmd->parsed())
      return run_solve(problem_path, param_spec, opt, out, err);
    if (verify->parsed()) return run_verify(problem_path, w_path, opt, out);
    if (gap_cmd->parsed())
      return run_gap(problem_path, param_spec, node_index, opt, out, err);
  } catch (const InvalidData& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace bnp
