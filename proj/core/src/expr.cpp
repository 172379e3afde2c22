#include "hderiv/expr.hpp"

#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

#include "hderiv/logarithm.hpp"

namespace hderiv {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind = Tok::end;
  int begin = 0;
  int end = 0;
  double value = 0.0;     // Tok::number
  bool integral = false;  // number had no decimal point
  char unit = 0;          // 'i', 'j' or 'k' fused onto the number, else 0
  std::string text;       // Tok::ident
};

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Extent of a decimal literal at p: digits with at most one interior dot, or
// a dot followed by digits. No exponent syntax exists in this format.
size_t scan_number(std::string_view s, size_t p) {
  size_t q = p;
  while (q < s.size() && is_digit(s[q])) ++q;
  if (q < s.size() && s[q] == '.' && q + 1 < s.size() && is_digit(s[q + 1])) {
    ++q;
    while (q < s.size() && is_digit(s[q])) ++q;
  }
  return q;
}

double number_value(std::string_view s, size_t from, size_t to) {
  double v = 0.0;
  std::from_chars(s.data() + from, s.data() + to, v, std::chars_format::fixed);
  return v;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  size_t p = 0;
  while (p < s.size()) {
    const char c = s[p];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++p;
      continue;
    }
    Token t;
    t.begin = static_cast<int>(p);
    if (is_digit(c) || (c == '.' && p + 1 < s.size() && is_digit(s[p + 1]))) {
      size_t q = scan_number(s, p);
      t.kind = Tok::number;
      t.value = number_value(s, p, q);
      t.integral = s.substr(p, q - p).find('.') == std::string_view::npos;
      if (q < s.size() && (s[q] == 'i' || s[q] == 'j' || s[q] == 'k') &&
          (q + 1 >= s.size() || !is_ident_char(s[q + 1]))) {
        t.unit = s[q];
        ++q;
      }
      t.end = static_cast<int>(q);
      p = q;
    } else if (is_ident_start(c)) {
      size_t q = p;
      while (q < s.size() && is_ident_char(s[q])) ++q;
      t.kind = Tok::ident;
      t.text = std::string(s.substr(p, q - p));
      t.end = static_cast<int>(q);
      p = q;
    } else {
      switch (c) {
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '*': t.kind = Tok::star; break;
        case '/': t.kind = Tok::slash; break;
        case '^': t.kind = Tok::caret; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        default:
          throw ParseError("unexpected character '" + std::string(1, c) +
                               "' at offset " + std::to_string(p),
                           static_cast<int>(p), "an operator, number or name");
      }
      t.end = static_cast<int>(p + 1);
      ++p;
    }
    out.push_back(std::move(t));
  }
  Token e;
  e.kind = Tok::end;
  e.begin = e.end = static_cast<int>(s.size());
  out.push_back(std::move(e));
  return out;
}

Quaternion unit_quaternion(char u) {
  switch (u) {
    case 'i': return Quaternion::unit(1);
    case 'j': return Quaternion::unit(2);
    default: return Quaternion::unit(3);
  }
}

ExprPtr make_node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr make_const(const Quaternion& q, SourceSpan span) {
  Expr e;
  e.kind = ExprKind::constant;
  e.span = span;
  e.value = q;
  return make_node(std::move(e));
}

// Sums, differences, products and negations of literal constants collapse at
// parse time, so "2+1i - z" carries a single constant 2+1i.
ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs) {
  SourceSpan span{lhs->span.begin, rhs->span.end};
  if (lhs->kind == ExprKind::constant && rhs->kind == ExprKind::constant &&
      (kind == ExprKind::add || kind == ExprKind::sub || kind == ExprKind::mul)) {
    Quaternion v = kind == ExprKind::add   ? lhs->value + rhs->value
                   : kind == ExprKind::sub ? lhs->value - rhs->value
                                           : lhs->value * rhs->value;
    return make_const(v, span);
  }
  Expr e;
  e.kind = kind;
  e.span = span;
  e.lhs = std::move(lhs);
  e.rhs = std::move(rhs);
  return make_node(std::move(e));
}

ExprPtr make_neg(ExprPtr child, int begin) {
  SourceSpan span{begin, child->span.end};
  if (child->kind == ExprKind::constant) return make_const(-child->value, span);
  Expr e;
  e.kind = ExprKind::neg;
  e.span = span;
  e.lhs = std::move(child);
  return make_node(std::move(e));
}

constexpr long long kMaxExponent = 9999;

struct Parser {
  std::vector<Token> toks;
  size_t i = 0;

  const Token& peek() const { return toks[i]; }
  Token take() { return toks[i++]; }

  [[noreturn]] void fail(const Token& at, const std::string& expected) const {
    throw ParseError("syntax error at offset " + std::to_string(at.begin) +
                         ": expected " + expected,
                     at.begin, expected);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), what);
    take();
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      ExprKind k = take().kind == Tok::plus ? ExprKind::add : ExprKind::sub;
      e = make_binary(k, std::move(e), parse_term());
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_power();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      ExprKind k = take().kind == Tok::star ? ExprKind::mul : ExprKind::div;
      e = make_binary(k, std::move(e), parse_power());
    }
    return e;
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_unary();
    if (peek().kind != Tok::caret) return base;
    std::vector<long long> exps;
    int last_end = base->span.end;
    int caret_off = peek().begin;
    while (peek().kind == Tok::caret) {
      take();
      exps.push_back(parse_exponent(&last_end));
    }
    long long n = exps.back();
    for (size_t k = exps.size() - 1; k-- > 0;) {
      n = fold_exponent(exps[k], n, caret_off);
    }
    if (n > kMaxExponent || n < -kMaxExponent) {
      throw ParseError("exponent too large at offset " + std::to_string(caret_off),
                       caret_off, "an exponent within +/-" + std::to_string(kMaxExponent));
    }
    Expr e;
    e.kind = ExprKind::pow_int;
    e.span = {base->span.begin, last_end};
    e.exponent = static_cast<int>(n);
    e.lhs = std::move(base);
    return make_node(std::move(e));
  }

  // Chained carets associate to the right, so the tower is folded into one
  // integer before the node is built.
  long long fold_exponent(long long base, long long e, int off) const {
    if (e < 0) {
      if (base == 1) return 1;
      if (base == -1) return e % 2 == 0 ? 1 : -1;
      throw ParseError("integer exponent required at offset " + std::to_string(off),
                       off, "an exponent tower with an integer value");
    }
    long long r = 1;
    for (long long k = 0; k < e; ++k) {
      r *= base;
      if (r > kMaxExponent || r < -kMaxExponent) {
        throw ParseError("exponent too large at offset " + std::to_string(off), off,
                         "an exponent within +/-" + std::to_string(kMaxExponent));
      }
    }
    return r;
  }

  long long parse_exponent(int* end_off) {
    bool neg = false;
    if (peek().kind == Tok::minus) {
      take();
      neg = true;
    }
    if (peek().kind == Tok::lparen) {
      take();
      long long inner = parse_exponent(end_off);
      if (peek().kind != Tok::rparen) fail(peek(), "')'");
      *end_off = take().end;
      return neg ? -inner : inner;
    }
    if (peek().kind != Tok::number) fail(peek(), "an integer exponent");
    Token num = take();
    if (!num.integral || num.unit != 0) {
      throw ParseError("integer exponent required at offset " +
                           std::to_string(num.begin),
                       num.begin, "an integer literal exponent");
    }
    if (num.value > static_cast<double>(kMaxExponent)) {
      throw ParseError("exponent too large at offset " + std::to_string(num.begin),
                       num.begin,
                       "an exponent within +/-" + std::to_string(kMaxExponent));
    }
    *end_off = num.end;
    long long n = static_cast<long long>(num.value);
    return neg ? -n : n;
  }

  ExprPtr parse_unary() {
    if (peek().kind == Tok::minus) {
      int begin = take().begin;
      return make_neg(parse_unary(), begin);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        Token num = take();
        Quaternion v = num.unit ? unit_quaternion(num.unit) * num.value
                                : Quaternion{num.value};
        return make_const(v, {num.begin, num.end});
      }
      case Tok::ident: {
        Token id = take();
        if (id.text == "z") {
          Expr e;
          e.kind = ExprKind::variable;
          e.span = {id.begin, id.end};
          return make_node(std::move(e));
        }
        if (id.text == "i" || id.text == "j" || id.text == "k") {
          return make_const(unit_quaternion(id.text[0]), {id.begin, id.end});
        }
        Func f;
        if (id.text == "exp") f = Func::exp;
        else if (id.text == "sin") f = Func::sin;
        else if (id.text == "cos") f = Func::cos;
        else if (id.text == "ln") f = Func::ln;
        else if (id.text == "inv") f = Func::inv;
        else {
          throw ParseError("unknown identifier '" + id.text + "' at offset " +
                               std::to_string(id.begin) +
                               "; the only variable is z",
                           id.begin, "'z', a function name, or a number");
        }
        expect(Tok::lparen, "'(' after function name");
        ExprPtr arg = parse_expr();
        if (peek().kind != Tok::rparen) fail(peek(), "')'");
        Token close = take();
        Expr e;
        e.kind = ExprKind::call;
        e.span = {id.begin, close.end};
        e.func = f;
        e.lhs = std::move(arg);
        return make_node(std::move(e));
      }
      case Tok::lparen: {
        take();
        ExprPtr e = parse_expr();
        if (peek().kind != Tok::rparen) fail(peek(), "')'");
        take();
        return e;
      }
      default:
        fail(t, "a number, 'z', a function call, '(' or '-'");
    }
  }
};

}  // namespace

ExprPtr parse(std::string_view text) {
  Parser p{lex(text)};
  ExprPtr e = p.parse_expr();
  if (p.peek().kind != Tok::end) p.fail(p.peek(), "end of input or an operator");
  return e;
}

Quaternion parse_quaternion(std::string_view text) {
  size_t p = 0;
  auto skip_ws = [&] {
    while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
  };
  auto fail = [&](const std::string& expected) -> void {
    throw ParseError("invalid quaternion literal at offset " + std::to_string(p),
                     static_cast<int>(p), expected);
  };

  double comp[4] = {0, 0, 0, 0};
  int terms = 0;
  skip_ws();
  while (true) {
    double sign = 1.0;
    if (p < text.size() && (text[p] == '+' || text[p] == '-')) {
      sign = text[p] == '-' ? -1.0 : 1.0;
      ++p;
      skip_ws();
    } else if (terms > 0) {
      break;  // terms after the first must be signed
    }
    double mag;
    bool have_number = false;
    if (p < text.size() &&
        (is_digit(text[p]) ||
         (text[p] == '.' && p + 1 < text.size() && is_digit(text[p + 1])))) {
      size_t q = scan_number(text, p);
      mag = number_value(text, p, q);
      p = q;
      have_number = true;
    } else {
      mag = 1.0;
    }
    int axis = 0;
    if (p < text.size() && (text[p] == 'i' || text[p] == 'j' || text[p] == 'k')) {
      axis = text[p] == 'i' ? 1 : text[p] == 'j' ? 2 : 3;
      ++p;
    } else if (!have_number) {
      fail("a decimal number or unit i/j/k");
    }
    comp[axis] += sign * mag;
    ++terms;
    skip_ws();
  }
  if (terms == 0) fail("a quaternion like a+bi+cj+dk");
  if (p != text.size()) fail("'+', '-' or end of input");
  return {comp[0], comp[1], comp[2], comp[3]};
}

namespace {

const char* func_name(Func f) {
  switch (f) {
    case Func::exp: return "exp";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::ln: return "ln";
    case Func::inv: return "inv";
  }
  return "?";
}

// Binding strength used when deciding parentheses: sums 1, products 2,
// powers 3, unary minus 4, atoms 6. A rendered constant behaves like
// whatever its own text starts and ends with.
int constant_prec(const Quaternion& q) {
  int nonzero = (q.x0 != 0.0) + (q.x1 != 0.0) + (q.x2 != 0.0) + (q.x3 != 0.0);
  if (nonzero == 0) return 6;
  if (nonzero > 1) return 1;
  double only = q.x0 + q.x1 + q.x2 + q.x3;
  return only < 0.0 ? 4 : 6;
}

int node_prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul:
    case ExprKind::div: return 2;
    case ExprKind::pow_int: return 3;
    case ExprKind::neg: return 4;
    case ExprKind::constant: return constant_prec(e.value);
    default: return 6;
  }
}

std::string render_at(const Expr& e, int min_prec);

std::string render_raw(const Expr& e) {
  switch (e.kind) {
    case ExprKind::variable: return "z";
    case ExprKind::constant: return to_string(e.value);
    case ExprKind::add:
      return render_at(*e.lhs, 1) + " + " + render_at(*e.rhs, 2);
    case ExprKind::sub:
      return render_at(*e.lhs, 1) + " - " + render_at(*e.rhs, 2);
    case ExprKind::mul:
      return render_at(*e.lhs, 2) + "*" + render_at(*e.rhs, 3);
    case ExprKind::div:
      return render_at(*e.lhs, 2) + "/" + render_at(*e.rhs, 3);
    case ExprKind::pow_int:
      return render_at(*e.lhs, 4) + "^" + std::to_string(e.exponent);
    case ExprKind::neg: return "-" + render_at(*e.lhs, 4);
    case ExprKind::call:
      return std::string(func_name(e.func)) + "(" + render_at(*e.lhs, 1) + ")";
  }
  return "?";
}

std::string render_at(const Expr& e, int min_prec) {
  std::string s = render_raw(e);
  if (node_prec(e) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string render(const Expr& e) { return render_at(e, 1); }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::variable: return true;
    case ExprKind::constant: return a.value == b.value;
    case ExprKind::pow_int:
      return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
    case ExprKind::neg: return structurally_equal(*a.lhs, *b.lhs);
    case ExprKind::call:
      return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
    default:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
}

namespace {

struct Evaluator {
  const EvalOptions& opts;
  EvalDiagnostics* diag;

  void merge_series(const SeriesDiagnostics& d) const {
    if (!diag) return;
    diag->series_degree = std::max(diag->series_degree, d.degree);
    diag->series_tail = std::max(diag->series_tail, d.tail_bound);
  }

  void merge_log(double cond) const {
    if (diag) diag->log_condition = std::max(diag->log_condition, cond);
  }

  static Elementary elementary_of(Func f) {
    return f == Func::exp ? Elementary::exp
           : f == Func::sin ? Elementary::sin
                            : Elementary::cos;
  }

  Quaternion value(const Expr& e, const Quaternion& z0) const {
    switch (e.kind) {
      case ExprKind::variable: return z0;
      case ExprKind::constant: return e.value;
      case ExprKind::add: return value(*e.lhs, z0) + value(*e.rhs, z0);
      case ExprKind::sub: return value(*e.lhs, z0) - value(*e.rhs, z0);
      case ExprKind::mul: return value(*e.lhs, z0) * value(*e.rhs, z0);
      case ExprKind::neg: return -value(*e.lhs, z0);
      case ExprKind::div: {
        Quaternion a = value(*e.lhs, z0);
        Quaternion b = value(*e.rhs, z0);
        try {
          return a * inverse(b);
        } catch (const std::domain_error& ex) {
          throw EvalError(ex.what(), e.span);
        }
      }
      case ExprKind::pow_int: {
        Quaternion a = value(*e.lhs, z0);
        try {
          return pow_int(a, e.exponent);
        } catch (const std::domain_error& ex) {
          throw EvalError(ex.what(), e.span);
        }
      }
      case ExprKind::call: {
        Quaternion v = value(*e.lhs, z0);
        try {
          switch (e.func) {
            case Func::inv: return inverse(v);
            case Func::ln: return principal_log(v);
            default: {
              SeriesResult r = eval_elementary(elementary_of(e.func), v, opts.trunc);
              merge_series({r.degree, r.tail_bound});
              return r.value;
            }
          }
        } catch (const EvalError&) {
          throw;
        } catch (const std::exception& ex) {
          throw EvalError(ex.what(), e.span);
        }
      }
    }
    throw EvalError("corrupt expression node", e.span);
  }

  HDual dual(const Expr& e, const Quaternion& z0) const {
    switch (e.kind) {
      case ExprKind::variable: return lift_var(z0);
      case ExprKind::constant: return lift_const(e.value);
      case ExprKind::add: return d_add(dual(*e.lhs, z0), dual(*e.rhs, z0));
      case ExprKind::sub: return d_sub(dual(*e.lhs, z0), dual(*e.rhs, z0));
      case ExprKind::mul: return d_mul(dual(*e.lhs, z0), dual(*e.rhs, z0));
      case ExprKind::neg:
        return d_scale(Quaternion{-1.0}, dual(*e.lhs, z0), Side::left);
      case ExprKind::div: {
        HDual a = dual(*e.lhs, z0);
        HDual b = dual(*e.rhs, z0);
        try {
          return d_mul(a, d_inv(b));
        } catch (const std::domain_error& ex) {
          throw EvalError(ex.what(), e.span);
        }
      }
      case ExprKind::pow_int: {
        HDual a = dual(*e.lhs, z0);
        try {
          return d_pow(a, e.exponent);
        } catch (const std::domain_error& ex) {
          throw EvalError(ex.what(), e.span);
        }
      }
      case ExprKind::call: {
        HDual f = dual(*e.lhs, z0);
        try {
          switch (e.func) {
            case Func::inv: return d_inv(f);
            case Func::ln: {
              double cond = 0.0;
              CanonicalSandwich dln = log_differential(f.value, opts.trunc, &cond);
              merge_log(cond);
              return d_compose(dln, principal_log(f.value), f);
            }
            default: {
              SeriesDiagnostics sd;
              HDual r = d_elementary(elementary_of(e.func), f, opts.trunc, &sd);
              merge_series(sd);
              return r;
            }
          }
        } catch (const EvalError&) {
          throw;
        } catch (const std::exception& ex) {
          throw EvalError(ex.what(), e.span);
        }
      }
    }
    throw EvalError("corrupt expression node", e.span);
  }
};

}  // namespace

Quaternion evaluate(const Expr& e, const Quaternion& z0, const EvalOptions& opts,
                    EvalDiagnostics* diag) {
  return Evaluator{opts, diag}.value(e, z0);
}

HDual evaluate_dual(const Expr& e, const Quaternion& z0, const EvalOptions& opts,
                    EvalDiagnostics* diag) {
  return Evaluator{opts, diag}.dual(e, z0);
}

Quaternion differentiate(const Expr& e, const Quaternion& z0,
                         const EvalOptions& opts, EvalDiagnostics* diag) {
  return trace(evaluate_dual(e, z0, opts, diag).differential);
}

QuatFn as_function(ExprPtr e, EvalOptions opts) {
  return [e = std::move(e), opts](const Quaternion& z) {
    return evaluate(*e, z, opts);
  };
}

}  // namespace hderiv
