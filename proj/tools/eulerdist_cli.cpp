// eulerdist command line: solve / verify / oracle-suite / wagner-check / parse.
// Every run writes exactly one JSON report; see README for the schema.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerdist/eulerdist.h"

using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Poly = std::unique_ptr<ed_poly, Deleter<ed_poly, ed_poly_free>>;
using Dist = std::unique_ptr<ed_dist, Deleter<ed_dist, ed_dist_free>>;
using Report = std::unique_ptr<ed_solve_report, Deleter<ed_solve_report, ed_report_free>>;
using TestFn = std::unique_ptr<ed_testfn, Deleter<ed_testfn, ed_testfn_free>>;
using Oracle = std::unique_ptr<ed_oracle_report, Deleter<ed_oracle_report, ed_oracle_free>>;
using Wagner = std::unique_ptr<ed_wagner_result, Deleter<ed_wagner_result, ed_wagner_free>>;

struct Failure {
  ed_status status;
  std::string message;
  std::optional<std::size_t> offset;
  std::string field;
};

void check(ed_status s, const std::string& field = {}) {
  if (s == ED_OK) return;
  Failure f{s, ed_last_error(), std::nullopt, field};
  if (s == ED_ERR_PARSE && ed_last_error_offset() != static_cast<size_t>(-1)) f.offset = ed_last_error_offset();
  throw f;
}

std::string take(char* s) {
  std::string out(s);
  ed_string_free(s);
  return out;
}

int exit_for(ed_status s) {
  switch (s) {
    case ED_ERR_PARSE:
    case ED_ERR_DIMENSION:
    case ED_ERR_COORDINATE_CONFLICT:
    case ED_ERR_INVALID_ARGUMENT:
    case ED_ERR_ZERO_POLYNOMIAL:
    case ED_ERR_UNSUPPORTED_INPUT:
    case ED_ERR_NOT_HYPERPLANE_SUPPORTED:
      return kUsage;
    default:
      return kInternal;
  }
}

Poly parse_poly(const std::string& src, std::size_t dim, const std::string& field) {
  ed_poly* p = nullptr;
  check(ed_poly_parse(src.c_str(), dim, &p), field);
  return Poly(p);
}
Dist parse_dist(const std::string& src, std::size_t dim, const std::string& field) {
  ed_dist* e = nullptr;
  check(ed_dist_parse(src.c_str(), dim, &e), field);
  return Dist(e);
}
TestFn parse_testfn(const std::string& src, std::size_t dim, const std::string& field) {
  ed_testfn* f = nullptr;
  check(ed_testfn_parse(src.c_str(), dim, &f), field);
  return TestFn(f);
}
std::string format(const ed_poly* p) {
  char* s = nullptr;
  check(ed_poly_format(p, &s));
  return take(s);
}
std::string format(const ed_dist* e) {
  char* s = nullptr;
  check(ed_dist_format(e, &s));
  return take(s);
}
std::string format(const ed_testfn* f) {
  char* s = nullptr;
  check(ed_testfn_format(f, &s));
  return take(s);
}

json check_entry(const std::string& name, bool pass, json value, json tolerance) {
  return json{{"name", name}, {"pass", pass}, {"value", std::move(value)}, {"tolerance", std::move(tolerance)}};
}

struct Run {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  json checks = json::array();
  std::optional<json> error;
};

// Dimension from -d, or from the polynomial when -d is absent.
std::size_t resolve_dim(std::size_t flag, const std::string& poly_src) {
  if (flag) return flag;
  return ed_poly_dim(parse_poly(poly_src, 0, "P").get());
}

struct SolveArgs {
  std::string poly, dist;
  std::size_t dim = 0;
  bool parallel = false;
};
void run_solve(const SolveArgs& a, Run& run) {
  run.inputs = {{"P", a.poly}, {"T", a.dist}, {"dim", a.dim}};
  const std::size_t d = resolve_dim(a.dim, a.poly);
  run.inputs["dim"] = d;
  Poly p = parse_poly(a.poly, d, "P");
  Dist t = parse_dist(a.dist, d, "T");
  ed_solve_report* raw = nullptr;
  check(ed_solve(p.get(), t.get(), a.parallel ? 1 : 0, &raw));
  Report r(raw);
  ed_dist* sol_raw = nullptr;
  check(ed_report_solution(r.get(), &sol_raw));
  Dist sol(sol_raw);
  json trace = json::array();
  for (std::size_t i = 0; i < ed_report_trace_length(r.get()); ++i) {
    char* s = nullptr;
    check(ed_report_trace_step(r.get(), i, &s));
    trace.push_back(take(s));
  }
  const bool verified = ed_report_verified(r.get()) != 0;
  run.outputs = {{"solution", format(sol.get())},
                 {"verified", verified},
                 {"escalation_depth", ed_report_escalation_depth(r.get())},
                 {"terms_dispatched", ed_report_terms_dispatched(r.get())},
                 {"recursion_trace", trace}};
  run.checks.push_back(check_entry("exact_verification", verified, verified, 0));
}

struct VerifyArgs {
  std::string poly, sol, dist;
  std::size_t dim = 0;
};
void run_verify(const VerifyArgs& a, Run& run) {
  run.inputs = {{"P", a.poly}, {"U", a.sol}, {"T", a.dist}, {"dim", a.dim}};
  const std::size_t d = resolve_dim(a.dim, a.poly);
  run.inputs["dim"] = d;
  Poly p = parse_poly(a.poly, d, "P");
  Dist u = parse_dist(a.sol, d, "U");
  Dist t = parse_dist(a.dist, d, "T");
  int verified = 0;
  check(ed_verify(p.get(), u.get(), t.get(), &verified));
  run.outputs = {{"verified", verified != 0}};
  run.checks.push_back(check_entry("exact_verification", verified != 0, verified != 0, 0));
}

struct OracleArgs {
  double tol = 1e-6;
  std::size_t dim = 1;
};
void run_oracle(const OracleArgs& a, Run& run) {
  run.inputs = {{"tol", a.tol}, {"dim", a.dim}};
  ed_oracle_report* raw = nullptr;
  check(ed_oracle_run(a.dim, a.tol, &raw));
  Oracle r(raw);
  // Rows are atoms in generator order; each row keeps its worst residual.
  json rows = json::array();
  std::size_t failures = 0, functions = 0;
  json worst;
  double worst_value = -1.0;
  std::string current;
  for (std::size_t i = 0; i < ed_oracle_count(r.get()); ++i) {
    char* atom_raw = nullptr;
    std::size_t fn = 0, coord = 0;
    double res = 0.0;
    check(ed_oracle_entry(r.get(), i, &atom_raw, &fn, &coord, &res));
    const std::string atom = take(atom_raw);
    functions = std::max(functions, fn + 1);
    if (res > a.tol) ++failures;
    if (rows.empty() || atom != current) {
      rows.push_back({{"atom", atom}, {"max_residual", res}});
      current = atom;
    } else if (res > rows.back()["max_residual"].get<double>()) {
      rows.back()["max_residual"] = res;
    }
    if (res > worst_value) {
      worst_value = res;
      worst = {{"atom", atom}, {"function", fn}, {"coordinate", coord}, {"residual", res}};
    }
  }
  const double max_res = ed_oracle_max_residual(r.get());
  run.outputs = {{"atoms", rows.size()},     {"functions", functions}, {"checks", ed_oracle_count(r.get())},
                 {"failures", failures},     {"max_residual", max_res}, {"worst", worst},
                 {"matrix", rows}};
  run.checks.push_back(check_entry("adjoint_identity", max_res <= a.tol, max_res, a.tol));
}

struct WagnerArgs {
  std::string poly;
  std::string testfn = "gauss(1)";
  std::size_t grid = 4096;
  double cutoff = 40.0;
  double tol = 1e-3;
  std::size_t dim = 0;
};
void run_wagner(const WagnerArgs& a, Run& run) {
  run.inputs = {{"P", a.poly}, {"testfn", a.testfn}, {"dim", a.dim}, {"N", a.grid}, {"R", a.cutoff}, {"tol", a.tol}};
  const std::size_t d = resolve_dim(a.dim, a.poly);
  run.inputs["dim"] = d;
  Poly p = parse_poly(a.poly, d, "P");
  TestFn phi = parse_testfn(a.testfn, d, "testfn");
  ed_wagner_result* raw = nullptr;
  check(ed_wagner_check(p.get(), phi.get(), a.grid, a.cutoff, &raw));
  Wagner w(raw);
  json eta = json::array(), lambda = json::array(), coeff = json::array();
  for (std::size_t i = 0; i < ed_wagner_dim(w.get()); ++i) eta.push_back(ed_wagner_eta(w.get(), i));
  for (std::size_t i = 0; i <= ed_wagner_order(w.get()); ++i) {
    char* s = nullptr;
    check(ed_wagner_lambda(w.get(), i, &s));
    lambda.push_back(take(s));
    check(ed_wagner_coefficient(w.get(), i, &s));
    coeff.push_back(take(s));
  }
  const double residual = ed_wagner_residual(w.get());
  run.outputs = {{"residual", residual},
                 {"N", a.grid},
                 {"R", a.cutoff},
                 {"eta", eta},
                 {"lambda", lambda},
                 {"a", coeff},
                 {"pairing", ed_wagner_pairing(w.get())},
                 {"phi_at_zero", ed_wagner_phi_at_zero(w.get())},
                 {"grid_offset_cells", ed_wagner_grid_offset(w.get())}};
  run.checks.push_back(check_entry("elementary_solution", residual <= a.tol, residual, a.tol));
}

struct ParseArgs {
  std::string poly, dist, testfn;
  std::size_t dim = 0;
};
void run_parse(const ParseArgs& a, Run& run) {
  const int given = !a.poly.empty() + !a.dist.empty() + !a.testfn.empty();
  if (given != 1)
    throw Failure{ED_ERR_INVALID_ARGUMENT, "exactly one of --poly, --dist, --testfn is required", std::nullopt, {}};
  if (!a.poly.empty()) {
    run.inputs = {{"kind", "poly"}, {"src", a.poly}, {"dim", a.dim}};
    Poly p = parse_poly(a.poly, a.dim, "src");
    const std::string canon = format(p.get());
    Poly again = parse_poly(canon, ed_poly_dim(p.get()), "canonical");
    const bool same = format(again.get()) == canon;
    run.outputs = {{"canonical", canon}, {"dim", ed_poly_dim(p.get())}, {"degree", ed_poly_degree(p.get())}};
    run.checks.push_back(check_entry("round_trip", same, same, 0));
    return;
  }
  if (a.dim == 0) throw Failure{ED_ERR_INVALID_ARGUMENT, "-d is required for --dist and --testfn", std::nullopt, {}};
  if (!a.dist.empty()) {
    run.inputs = {{"kind", "dist"}, {"src", a.dist}, {"dim", a.dim}};
    Dist e = parse_dist(a.dist, a.dim, "src");
    const std::string canon = format(e.get());
    Dist again = parse_dist(canon, a.dim, "canonical");
    int same = 0;
    check(ed_dist_equal(e.get(), again.get(), &same));
    run.outputs = {{"canonical", canon}, {"terms", ed_dist_term_count(e.get())}};
    run.checks.push_back(check_entry("round_trip", same != 0, same != 0, 0));
    return;
  }
  run.inputs = {{"kind", "testfn"}, {"src", a.testfn}, {"dim", a.dim}};
  TestFn f = parse_testfn(a.testfn, a.dim, "src");
  const std::string canon = format(f.get());
  TestFn again = parse_testfn(canon, a.dim, "canonical");
  const bool same = format(again.get()) == canon;
  run.outputs = {{"canonical", canon}};
  run.checks.push_back(check_entry("round_trip", same, same, 0));
}

int emit(const Run& run, std::optional<double> wall_ms, const std::string& path) {
  json report;
  report["command"] = run.command;
  report["inputs"] = run.inputs;
  if (run.error) {
    report["error"] = *run.error;
  } else {
    report["outputs"] = run.outputs;
  }
  report["checks"] = run.checks;
  report["wall_time_ms"] = wall_ms ? json(*wall_ms) : json(nullptr);
  const std::string text = report.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "cannot write report to " << path << "\n";
      return kInternal;
    }
  }
  if (run.error) return (*run.error)["exit_code"].get<int>();
  for (const auto& c : run.checks)
    if (!c["pass"].get<bool>()) return kCheckFailed;
  return kOk;
}

json error_object(const Failure& f, int code) {
  json e = {{"kind", ed_status_name(f.status)}, {"message", f.message}};
  if (!f.field.empty()) e["field"] = f.field;
  if (f.offset) e["offset"] = *f.offset;
  e["exit_code"] = code;
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-operator solver for tensor-product distributions"};
  app.require_subcommand(1);
  std::string output;
  bool no_timing = false;
  app.add_option("-o,--output", output, "Report path (default stdout)");
  app.add_flag("--no-timing", no_timing, "Write wall_time_ms as null so reports are reproducible");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Particular solution of P(theta) U = T");
  solve->add_option("-P,--poly", solve_args.poly, "Polynomial in t1..t9")->required();
  solve->add_option("-T,--rhs", solve_args.dist, "Right-hand side distribution")->required();
  solve->add_option("-d,--dim", solve_args.dim, "Dimension (default: from P)");
  solve->add_flag("--parallel", solve_args.parallel, "Solve terms concurrently");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check P(theta) U = T exactly");
  verify->add_option("-P,--poly", verify_args.poly)->required();
  verify->add_option("-U,--solution", verify_args.sol)->required();
  verify->add_option("-T,--rhs", verify_args.dist)->required();
  verify->add_option("-d,--dim", verify_args.dim);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle-suite", "Adjoint identity over the generator atoms");
  oracle->add_option("--tol", oracle_args.tol, "Pass threshold")->check(CLI::PositiveNumber);
  oracle->add_option("-d,--dim", oracle_args.dim)->check(CLI::Range(1, 9));

  WagnerArgs wagner_args;
  auto* wagner = app.add_subcommand("wagner-check", "Pair the elementary solution with P(-d) phi");
  wagner->add_option("-P,--poly", wagner_args.poly)->required();
  wagner->add_option("--testfn", wagner_args.testfn, "gauss(<poly in x>; c=...; w=...)");
  wagner->add_option("--grid", wagner_args.grid, "Grid points per axis")->check(CLI::Range(8, 1 << 16));
  wagner->add_option("--cutoff", wagner_args.cutoff, "Frequency cutoff")->check(CLI::PositiveNumber);
  wagner->add_option("--tol", wagner_args.tol)->check(CLI::PositiveNumber);
  wagner->add_option("-d,--dim", wagner_args.dim);

  ParseArgs parse_args;
  auto* parse = app.add_subcommand("parse", "Parse and print canonical form");
  parse->add_option("--poly", parse_args.poly);
  parse->add_option("--dist", parse_args.dist);
  parse->add_option("--testfn", parse_args.testfn);
  parse->add_option("-d,--dim", parse_args.dim);

  Run run;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    run.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    run.error = json{{"kind", "UsageError"}, {"message", e.what()}, {"exit_code", int(kUsage)}};
    return emit(run, std::nullopt, output);
  }

  CLI::App* sub = app.get_subcommands().front();
  run.command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (sub == solve) run_solve(solve_args, run);
    else if (sub == verify) run_verify(verify_args, run);
    else if (sub == oracle) run_oracle(oracle_args, run);
    else if (sub == wagner) run_wagner(wagner_args, run);
    else run_parse(parse_args, run);
  } catch (const Failure& f) {
    run.outputs = json::object();
    run.checks = json::array();
    run.error = error_object(f, exit_for(f.status));
  } catch (const std::exception& e) {
    run.error = json{{"kind", "InternalError"}, {"message", e.what()}, {"exit_code", int(kInternal)}};
  }
  std::optional<double> wall;
  if (!no_timing) {
    const auto ns = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    wall = ns.count() / 1000.0;
  }
  return emit(run, wall, output);
}
