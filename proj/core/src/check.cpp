#include "hderiv/check.hpp"

#include <istream>

#include <json.hpp>

namespace hderiv {

std::vector<CheckReport> run_checks(const std::string& expr_text,
                                    const std::vector<Quaternion>& points,
                                    const DiffConfig& fd,
                                    const SeriesTruncation& trunc) {
  ExprPtr e = parse(expr_text);
  EvalOptions opts{trunc};
  QuatFn f = as_function(e, opts);

  std::vector<CheckReport> out;
  out.reserve(points.size());
  for (const Quaternion& p : points) {
    CheckReport r;
    r.point = p;
    r.tolerance = fd.tol;
    try {
      EvalDiagnostics diag;
      r.ad_derivative = differentiate(*e, p, opts, &diag);
      r.fd_derivative = fd_partial_x0(f, p, fd);
      r.diagnostics = diag;
      r.evaluated = true;
      r.abs_error = abs(r.ad_derivative - r.fd_derivative);
      r.pass = r.abs_error <= r.tolerance;
    } catch (const std::exception& ex) {
      r.error = ex.what();
      r.pass = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

namespace {

nlohmann::ordered_json quat_json(const Quaternion& q) {
  return nlohmann::ordered_json::array({q.x0, q.x1, q.x2, q.x3});
}

}  // namespace

std::string reports_to_json(const std::string& expr_text,
                            const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json doc;
  doc["schema"] = "hderiv-report/1";
  doc["expression"] = expr_text;
  auto results = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["point"] = quat_json(r.point);
    if (r.evaluated) {
      jr["ad_derivative"] = quat_json(r.ad_derivative);
      jr["fd_derivative"] = quat_json(r.fd_derivative);
      jr["abs_error"] = r.abs_error;
    }
    jr["tolerance"] = r.tolerance;
    jr["pass"] = r.pass;
    if (!r.error.empty()) jr["error"] = r.error;
    jr["diagnostics"] = {
        {"series_degree", r.diagnostics.series_degree},
        {"series_tail_bound", r.diagnostics.series_tail},
        {"log_condition", r.diagnostics.log_condition},
    };
    results.push_back(std::move(jr));
  }
  doc["results"] = std::move(results);
  return doc.dump(2);
}

std::vector<CorpusEntry> load_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t sep = t.find(';');
    if (sep == std::string::npos) {
      throw ParseError("corpus line " + std::to_string(lineno) +
                           " is missing the ';' between expression and point",
                       0, "a line of the form EXPR ; POINT");
    }
    CorpusEntry entry;
    entry.expression = trim(t.substr(0, sep));
    entry.point_text = trim(t.substr(sep + 1));
    if (entry.expression.empty() || entry.point_text.empty()) {
      throw ParseError("corpus line " + std::to_string(lineno) +
                           " has an empty expression or point",
                       0, "a line of the form EXPR ; POINT");
    }
    entry.point = parse_quaternion(entry.point_text);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace hderiv
