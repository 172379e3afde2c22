#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hderiv/autodiff.hpp"
#include "hderiv/diffops.hpp"
#include "hderiv/quaternion.hpp"
#include "hderiv/series.hpp"

namespace hderiv {

enum class ExprKind { variable, constant, add, sub, mul, div, neg, pow_int, call };

enum class Func { exp, sin, cos, ln, inv };

/// Byte range [begin, end) of a node in the source text.
struct SourceSpan {
  int begin = 0;
  int end = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable AST node. Which fields are meaningful depends on kind:
// constant -> value, pow_int -> lhs/exponent, call -> func/lhs,
// neg -> lhs, binary kinds -> lhs/rhs.
struct Expr {
  ExprKind kind{};
  SourceSpan span{};
  Quaternion value{};
  int exponent = 0;
  Func func{};
  ExprPtr lhs;
  ExprPtr rhs;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int offset, std::string expected)
      : std::runtime_error(msg), offset_(offset), expected_(std::move(expected)) {}
  /// Byte offset the parser gave up at.
  int offset() const { return offset_; }
  /// Human-readable description of what would have been accepted there.
  const std::string& expected() const { return expected_; }

 private:
  int offset_;
  std::string expected_;
};

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& msg, SourceSpan span)
      : std::runtime_error(msg), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// Grammar: + - on the outside, then * /, then ^ (right-associative, integer
// literal exponents only), unary minus binding tightest, calls
// exp/sin/cos/ln/inv, parentheses, the variable z, decimal reals and the
// units i j k. Sums of literal constants like 2+1i collapse into one
// constant node at parse time.
ExprPtr parse(std::string_view text);

/// Strict point-literal parser for the "a+bi+cj+dk" format.
Quaternion parse_quaternion(std::string_view text);

/// Text that reparses to a structurally equal tree.
std::string render(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

struct EvalOptions {
  SeriesTruncation trunc{};
};

// Worst-case series and solver indicators accumulated over an evaluation.
struct EvalDiagnostics {
  int series_degree = 0;
  double series_tail = 0.0;
  double log_condition = 0.0;
};

Quaternion evaluate(const Expr& e, const Quaternion& z0,
                    const EvalOptions& opts = {}, EvalDiagnostics* diag = nullptr);

HDual evaluate_dual(const Expr& e, const Quaternion& z0,
                    const EvalOptions& opts = {}, EvalDiagnostics* diag = nullptr);

/// Derivative at z0: the propagated differential evaluated at 1.
Quaternion differentiate(const Expr& e, const Quaternion& z0,
                         const EvalOptions& opts = {},
                         EvalDiagnostics* diag = nullptr);

/// Wrap a parsed expression as a plain function for the stencil operators.
QuatFn as_function(ExprPtr e, EvalOptions opts = {});

}  // namespace hderiv
