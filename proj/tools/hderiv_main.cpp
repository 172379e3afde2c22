// Command line front end: evaluate quaternion expressions, take their
// H-derivatives, and cross-check the derivative against finite differences.
//
// Exit codes: 0 success / all checks pass, 1 any check failure or runtime
// domain error, 2 malformed input (CLI usage, expression, or point literal).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hderiv/check.hpp"
#include "hderiv/expr.hpp"

namespace {

using hderiv::Quaternion;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

struct SeriesFlags {
  double eps = 1e-14;
  int nmax = 200;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps", eps, "series tail-bound target")
        ->capture_default_str();
    cmd->add_option("--nmax", nmax, "series degree cap")->capture_default_str();
  }
  hderiv::SeriesTruncation trunc() const { return {eps, nmax}; }
};

std::string format_report_line(const std::string& expr,
                               const hderiv::CheckReport& r) {
  std::ostringstream os;
  os << expr << " @ " << to_string(r.point) << ": ";
  if (!r.error.empty()) {
    os << "ERROR " << r.error;
    return os.str();
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", r.abs_error);
  os << "ad=" << to_string(r.ad_derivative) << " fd=" << to_string(r.fd_derivative)
     << " |diff|=" << buf;
  std::snprintf(buf, sizeof buf, "%g", r.tolerance);
  os << " tol=" << buf << (r.pass ? " PASS" : " FAIL");
  return os.str();
}

int run_point_command(bool derivative, const std::string& expr_text,
                      const std::string& at_text, const SeriesFlags& series) {
  hderiv::ExprPtr e = hderiv::parse(expr_text);
  Quaternion z0 = hderiv::parse_quaternion(at_text);
  hderiv::EvalOptions opts{series.trunc()};
  Quaternion v = derivative ? hderiv::differentiate(*e, z0, opts)
                            : hderiv::evaluate(*e, z0, opts);
  std::cout << to_string(v) << "\n";
  return 0;
}

int run_check_command(const std::string& expr_text, const std::string& at_text,
                      const std::string& corpus_path, double step, double tol,
                      bool json, const SeriesFlags& series) {
  hderiv::DiffConfig fd;
  fd.step = step;
  fd.tol = tol;
  const hderiv::SeriesTruncation trunc = series.trunc();

  struct Batch {
    std::string expression;
    std::vector<hderiv::CheckReport> reports;
  };
  std::vector<Batch> batches;

  if (!corpus_path.empty()) {
    std::ifstream in(corpus_path);
    if (!in) {
      std::cerr << "error: cannot open corpus file '" << corpus_path << "'\n";
      return 2;
    }
    for (const auto& entry : hderiv::load_corpus(in)) {
      batches.push_back(
          {entry.expression,
           hderiv::run_checks(entry.expression, {entry.point}, fd, trunc)});
    }
  } else {
    if (expr_text.empty() || at_text.empty()) {
      std::cerr << "error: check needs EXPR and --at, or --corpus FILE\n";
      return 2;
    }
    std::vector<Quaternion> points;
    for (const auto& piece : split_csv(at_text)) {
      points.push_back(hderiv::parse_quaternion(piece));
    }
    batches.push_back({expr_text, hderiv::run_checks(expr_text, points, fd, trunc)});
  }

  bool ok = true;
  for (const auto& b : batches) ok = ok && all_pass(b.reports);

  if (json) {
    if (batches.size() == 1) {
      std::cout << hderiv::reports_to_json(batches[0].expression, batches[0].reports)
                << "\n";
    } else {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& b : batches) {
        arr.push_back(nlohmann::ordered_json::parse(
            hderiv::reports_to_json(b.expression, b.reports)));
      }
      std::cout << arr.dump(2) << "\n";
    }
  } else {
    int total = 0, passed = 0;
    for (const auto& b : batches) {
      for (const auto& r : b.reports) {
        std::cout << format_report_line(b.expression, r) << "\n";
        ++total;
        if (r.pass) ++passed;
      }
    }
    std::cout << passed << "/" << total << " checks passed\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quaternion expression calculus: values, H-derivatives, checks"};
  app.require_subcommand(1);

  std::string eval_expr, eval_at;
  SeriesFlags eval_series;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate EXPR at a point");
  eval_cmd->add_option("EXPR", eval_expr, "expression in the variable z")->required();
  eval_cmd->add_option("--at", eval_at, "point a+bi+cj+dk")->required();
  eval_series.attach(eval_cmd);

  std::string diff_expr, diff_at;
  SeriesFlags diff_series;
  auto* diff_cmd = app.add_subcommand("diff", "H-derivative of EXPR at a point");
  diff_cmd->add_option("EXPR", diff_expr, "expression in the variable z")->required();
  diff_cmd->add_option("--at", diff_at, "point a+bi+cj+dk")->required();
  diff_series.attach(diff_cmd);

  std::string check_expr, check_at, corpus_path;
  double step = 1e-5, tol = 1e-6;
  bool json = false;
  SeriesFlags check_series;
  auto* check_cmd =
      app.add_subcommand("check", "compare the derivative against finite differences");
  check_cmd->add_option("EXPR", check_expr, "expression in the variable z");
  check_cmd->add_option("--at", check_at, "comma-separated points");
  check_cmd->add_option("--step", step, "finite-difference step")->capture_default_str();
  check_cmd->add_option("--tol", tol, "pass/fail tolerance")->capture_default_str();
  check_cmd->add_flag("--json", json, "emit a JSON report");
  check_cmd->add_option("--corpus", corpus_path, "file of EXPR ; POINT lines");
  check_series.attach(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) {
      return run_point_command(false, eval_expr, eval_at, eval_series);
    }
    if (diff_cmd->parsed()) {
      return run_point_command(true, diff_expr, diff_at, diff_series);
    }
    return run_check_command(check_expr, check_at, corpus_path, step, tol, json,
                             check_series);
  } catch (const hderiv::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hderiv::EvalError& e) {
    std::cerr << "error: " << e.what() << " (expression bytes " << e.span().begin
              << ".." << e.span().end << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
