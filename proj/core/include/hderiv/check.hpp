#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hderiv/diffops.hpp"
#include "hderiv/expr.hpp"

namespace hderiv {

// Outcome of comparing the forward-mode derivative of one expression at one
// point against the finite-difference oracle. When error is nonempty the
// point failed before both derivatives existed and pass is false.
struct CheckReport {
  Quaternion point{};
  Quaternion ad_derivative{};
  Quaternion fd_derivative{};
  bool evaluated = false;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;
  EvalDiagnostics diagnostics{};
};

// Runs every point even when some fail; per-point errors land in the report
// instead of aborting the batch. A malformed expression still throws
// ParseError since nothing can run at all.
std::vector<CheckReport> run_checks(const std::string& expr_text,
                                    const std::vector<Quaternion>& points,
                                    const DiffConfig& fd = {},
                                    const SeriesTruncation& trunc = {});

bool all_pass(const std::vector<CheckReport>& reports);

/// JSON document {"schema":"hderiv-report/1","expression":...,"results":[...]}.
std::string reports_to_json(const std::string& expr_text,
                            const std::vector<CheckReport>& reports);

struct CorpusEntry {
  std::string expression;
  std::string point_text;
  Quaternion point;
};

// Corpus files hold one "EXPR ; POINT" pair per line; blank lines and lines
// starting with '#' are skipped.
std::vector<CorpusEntry> load_corpus(std::istream& in);

}  // namespace hderiv
