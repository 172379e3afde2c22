// End-to-end acceptance harness. Each numbered criterion prints exactly one
// PASS/FAIL line; the process exits 0 only if every criterion passes.
// Tolerances are pinned here on purpose: loosening them is a visible diff.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "hderiv/autodiff.hpp"
#include "hderiv/check.hpp"
#include "hderiv/diffops.hpp"
#include "hderiv/expr.hpp"
#include "hderiv/logarithm.hpp"
#include "hderiv/sandwich.hpp"
#include "hderiv/series.hpp"
#include "test_support.hpp"

using namespace hderiv;

namespace {

#ifndef HDERIV_CLI_PATH
#error "HDERIV_CLI_PATH must point at the CLI binary"
#endif
#ifndef HDERIV_CORPUS_PATH
#error "HDERIV_CORPUS_PATH must point at the standing corpus"
#endif

constexpr const char* kCli = HDERIV_CLI_PATH;
constexpr const char* kCorpus = HDERIV_CORPUS_PATH;

struct Outcome {
  bool ok;
  std::string detail;
};

// ---- 1: power rule ---------------------------------------------------------

Outcome power_rule() {
  std::mt19937 rng(101);
  double worst_pos = 0.0, worst_neg = 0.0;
  for (int n = 0; n <= 8; ++n) {
    ExprPtr e = parse("z^" + std::to_string(n));
    for (int t = 0; t < 100; ++t) {
      Quaternion z = random_quaternion(rng, 3.0);
      Quaternion d = differentiate(*e, z);
      if (n == 0) {
        worst_pos = std::max(worst_pos, abs(d));
        continue;
      }
      Quaternion expected = pow_int(z, n - 1) * static_cast<double>(n);
      worst_pos = std::max(worst_pos, abs(d - expected) / abs(expected));
    }
  }
  for (int n = -1; n >= -4; --n) {
    ExprPtr e = parse("z^(" + std::to_string(n) + ")");
    for (int t = 0; t < 100; ++t) {
      Quaternion z = random_quaternion(rng, 3.0, 0.5);
      Quaternion d = differentiate(*e, z);
      Quaternion expected = pow_int(z, n - 1) * static_cast<double>(n);
      worst_neg = std::max(worst_neg, abs(d - expected) / abs(expected));
    }
  }
  std::ostringstream os;
  os << "d(z^n) = n z^(n-1), worst rel err " << worst_pos << " (n in 0..8), "
     << worst_neg << " (n in -4..-1)";
  return {worst_pos <= 1e-10 && worst_neg <= 1e-9, os.str()};
}

// ---- 2: elementary derivatives ---------------------------------------------

Outcome elementary_derivatives() {
  std::mt19937 rng(202);
  ExprPtr de = parse("exp(z)");
  ExprPtr ds = parse("sin(z)");
  ExprPtr dc = parse("cos(z)");
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Quaternion z = random_quaternion(rng, 3.0);
    worst = std::max(worst, abs(differentiate(*de, z) - eval_exp(z)));
    worst = std::max(worst, abs(differentiate(*ds, z) - eval_cos(z)));
    worst = std::max(worst, abs(differentiate(*dc, z) + eval_sin(z)));
  }
  std::ostringstream os;
  os << "exp'=exp, sin'=cos, cos'=-sin at 100 points, worst abs err " << worst;
  return {worst <= 1e-9, os.str()};
}

// ---- 3: autodiff vs finite differences over the corpus ---------------------

Outcome corpus_agreement() {
  std::ifstream in(kCorpus);
  if (!in) return {false, std::string("cannot open corpus ") + kCorpus};
  auto entries = load_corpus(in);
  if (entries.size() != 30) {
    return {false, "expected a 30-expression corpus, found " +
                       std::to_string(entries.size())};
  }

  std::mt19937 rng(303);
  DiffConfig fd1;          // step 1e-5 by default
  DiffConfig fd2;
  fd2.step = 2e-5;
  double worst = 0.0;
  for (const auto& entry : entries) {
    ExprPtr e = parse(entry.expression);
    QuatFn f = as_function(e);
    int accepted = 0, attempts = 0;
    while (accepted < 20 && attempts < 400) {
      ++attempts;
      Quaternion p = random_quaternion(rng, 1.2);
      Quaternion ad, g1, g2;
      try {
        ad = differentiate(*e, p);
        g1 = fd_partial_x0(f, p, fd1);
        g2 = fd_partial_x0(f, p, fd2);
      } catch (const std::exception&) {
        continue;  // outside the expression's domain
      }
      // Two step sizes must agree before the stencil counts as an oracle;
      // points too close to a pole or branch cut get resampled.
      if (abs(g1 - g2) > 2e-7) continue;
      ++accepted;
      worst = std::max(worst, abs(ad - g1));
    }
    if (accepted < 20) {
      return {false, "could not place 20 admissible points for '" +
                         entry.expression + "'"};
    }
  }
  std::ostringstream os;
  os << "30 expressions x 20 points, worst |ad - fd| = " << worst;
  return {worst <= 1e-6, os.str()};
}

// ---- 4: remainder is o(h) with slope about 2 -------------------------------

Outcome remainder_order() {
  const char* exprs[] = {"exp(z)", "sin(z)", "cos(z)", "z^3", "inv(2-z)"};
  std::mt19937 rng(404);
  double worst_slope = 10.0;
  for (const char* s : exprs) {
    ExprPtr e = parse(s);
    QuatFn f = as_function(e);
    Quaternion z0 = random_quaternion(rng, 1.2);
    HDual dual = evaluate_dual(*e, z0);
    for (int dir = 0; dir < 8; ++dir) {
      Quaternion u = random_unit(rng);
      std::vector<double> lx, ly;
      for (int k = 0; k <= 8; ++k) {
        double hn = std::pow(10.0, -1.0 - 0.5 * k);  // 1e-1 .. 1e-5
        Quaternion h = u * hn;
        double r = abs(f(z0 + h) - dual.value - apply(dual.differential, h));
        lx.push_back(std::log10(hn));
        ly.push_back(std::log10(r));
      }
      // least-squares slope of log r against log h
      double n = lx.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
      }
      double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      worst_slope = std::min(worst_slope, slope);
    }
  }
  std::ostringstream os;
  os << "log-log remainder slope over 5 functions x 8 directions, min "
     << worst_slope;
  return {worst_slope >= 1.8, os.str()};
}

// ---- 5: laplacian of z^2 ----------------------------------------------------

Outcome laplacian_square() {
  std::mt19937 rng(505);
  QuatFn f = [](const Quaternion& z) { return z * z; };
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    Quaternion z = random_quaternion(rng, 2.0);
    worst = std::max(worst, abs(laplacian(f, z) - Quaternion{-4.0}));
  }
  std::ostringstream os;
  os << "laplacian(z^2) = -4 at 10 points (step 1e-3), worst err " << worst;
  return {worst <= 1e-6, os.str()};
}

// ---- 6: laplacian of z^3 is regular ----------------------------------------

Outcome laplacian_cube_regular() {
  std::mt19937 rng(606);
  QuatFn cube = [](const Quaternion& z) { return z * z * z; };
  QuatFn lap_cube = [&](const Quaternion& z) { return laplacian(cube, z); };
  const DiffConfig nested{kNestedStep, Scheme::central, 1e-6};
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    Quaternion z = random_quaternion(rng, 1.5);
    worst = std::max(worst, abs(fueter_apply(lap_cube, z, Side::left, nested)));
    worst = std::max(worst, abs(fueter_apply(lap_cube, z, Side::right, nested)));
  }

  QuatFn ident = [](const Quaternion& z) { return z; };
  double ident_err =
      abs(fueter_apply(ident, Quaternion{0.4, -0.7, 0.2, 0.5}, Side::right) -
          Quaternion{-2.0});

  std::ostringstream os;
  os << "fueter of nested laplacian(z^3), worst norm " << worst
     << "; fueter_right(z) err " << ident_err;
  return {worst <= 1e-3 && ident_err <= 1e-6, os.str()};
}

// ---- 7: logarithm round trip and implicit derivative ------------------------

Quaternion polar_point(std::mt19937& rng, double rmin, double rmax,
                       double theta_min, double theta_max) {
  std::uniform_real_distribution<double> rad(rmin, rmax);
  std::uniform_real_distribution<double> ang(theta_min, theta_max);
  Quaternion u = random_unit_imaginary(rng);
  double r = rad(rng), th = ang(rng);
  return Quaternion{r * std::cos(th)} + u * (r * std::sin(th));
}

Outcome logarithm_contract() {
  std::mt19937 rng(707);
  double worst_rt = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Quaternion z = polar_point(rng, 0.1, 10.0, 0.02, 3.1215);
    worst_rt = std::max(worst_rt, abs(eval_exp(principal_log(z)) - z));
  }

  double worst_res = 0.0, worst_fd = 0.0, worst_slice = 0.0;
  QuatFn plog = [](const Quaternion& z) { return principal_log(z); };
  for (int t = 0; t < 50; ++t) {
    Quaternion z = polar_point(rng, 0.5, 3.0, 0.2, 2.8);
    LogDerivativeResult r = log_derivative(z);
    worst_res = std::max(worst_res, r.residual);
    worst_fd = std::max(worst_fd, abs(r.w_prime - fd_partial_x0(plog, z)));
  }
  for (int t = 0; t < 50; ++t) {
    // complex-slice point: on R + Ru the classical formula ln' = 1/z holds
    Quaternion z = polar_point(rng, 0.5, 3.0, 0.2, 2.8);
    worst_slice = std::max(worst_slice,
                           abs(log_derivative(z).w_prime - inverse(z)));
  }

  std::ostringstream os;
  os << "exp(ln z) round trip worst " << worst_rt << ", residual worst "
     << worst_res << ", |w' - fd| worst " << worst_fd << ", slice |w' - 1/z| worst "
     << worst_slice;
  return {worst_rt <= 1e-10 && worst_res < 1e-9 && worst_fd <= 1e-6 &&
              worst_slice < 1e-8,
          os.str()};
}

// ---- 8: one-sided quotients only exist for affine functions ----------------

Outcome quotient_witness() {
  QuatFn square = [](const Quaternion& z) { return z * z; };
  Quaternion q_real = directional_quotient(square, Quaternion::unit(2),
                                           Quaternion{1.0}, Side::right, 1e-6);
  Quaternion q_imag = directional_quotient(square, Quaternion::unit(2),
                                           Quaternion::unit(1), Side::right, 1e-6);
  double gap = abs(q_real - q_imag);

  Quaternion a{0.6, -0.4, 0.3, 0.2};
  Quaternion b{0.1, 0.8, -0.5, 0.3};
  QuatFn affine = [&](const Quaternion& z) { return a * z + b; };
  QuotientSpread spread =
      directional_spread(affine, Quaternion{0.3, 0.2, -0.6, 0.4}, Side::right, 1e-3);

  std::ostringstream os;
  os << "z^2 at i2: quotient gap " << gap << " (needs >= 1.9); affine spread "
     << spread.max_difference;
  return {gap >= 1.9 && spread.max_difference <= 1e-10, os.str()};
}

// ---- 9: sandwich algebra ----------------------------------------------------

Outcome sandwich_algebra() {
  std::mt19937 rng(909);
  bool trace_exact = true;
  double worst_rt = 0.0, worst_comp = 0.0;
  for (int t = 0; t < 200; ++t) {
    SandwichForm f, g;
    for (int k = 0; k < 3; ++k) {
      f.terms.push_back({random_quaternion(rng, 1.5), random_quaternion(rng, 1.5)});
      g.terms.push_back({random_quaternion(rng, 1.5), random_quaternion(rng, 1.5)});
    }
    trace_exact = trace_exact && trace(f) == apply(f, Quaternion{1.0});
    trace_exact = trace_exact && trace(g) == apply(g, Quaternion{1.0});

    CanonicalSandwich c = canonicalize(f);
    CanonicalSandwich back = from_matrix(to_matrix(c));
    for (int k = 0; k < 4; ++k) {
      worst_rt = std::max(worst_rt, abs(c.b[k] - back.b[k]));
    }

    RealMatrix4 lhs = to_matrix(compose(f, g));
    RealMatrix4 rhs = to_matrix(f) * to_matrix(g);
    for (int r = 0; r < 4; ++r)
      for (int cidx = 0; cidx < 4; ++cidx) {
        worst_comp = std::max(worst_comp, std::fabs(lhs(r, cidx) - rhs(r, cidx)));
      }
  }
  std::ostringstream os;
  os << "trace==apply(1) exact: " << (trace_exact ? "yes" : "NO")
     << ", matrix round trip worst " << worst_rt << ", compose-vs-product worst "
     << worst_comp;
  return {trace_exact && worst_rt <= 1e-12 && worst_comp <= 1e-11, os.str()};
}

// ---- 10: CLI contract -------------------------------------------------------

int run_status(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome cli_contract() {
  const std::string cli = kCli;
  const std::string corpus = kCorpus;

  int ok_rc = run_status(cli + " check --corpus " + corpus + " >/dev/null 2>&1");
  int fail_rc = run_status(cli + " check --corpus " + corpus +
                           " --tol 1e-20 >/dev/null 2>&1");
  int usage_rc = run_status(cli + " check \"z^^\" --at \"1\" >/dev/null 2>&1");

  bool json_ok = false;
  std::string json_text;
  {
    std::string cmd = cli + " check --corpus " + corpus + " --json 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (p) {
      char buf[4096];
      size_t n;
      while ((n = fread(buf, 1, sizeof buf, p)) > 0) json_text.append(buf, n);
      int rc = pclose(p);
      if (WIFEXITED(rc) && WEXITSTATUS(rc) == 0) {
        try {
          auto doc = nlohmann::json::parse(json_text);
          json_ok = doc.is_array() && doc.size() == 30;
          for (const auto& batch : doc) {
            json_ok = json_ok && batch["schema"] == "hderiv-report/1" &&
                      batch["expression"].is_string() &&
                      batch["results"].is_array() && batch["results"].size() == 1;
            if (!json_ok) break;
            const auto& r = batch["results"][0];
            json_ok = r["point"].is_array() && r["point"].size() == 4 &&
                      r["pass"].is_boolean() && r["pass"].get<bool>() &&
                      r["ad_derivative"].is_array() &&
                      r["fd_derivative"].is_array();
          }
        } catch (const std::exception&) {
          json_ok = false;
        }
      }
    }
  }

  std::ostringstream os;
  os << "corpus rc=" << ok_rc << " (want 0), tol-1e-20 rc=" << fail_rc
     << " (want 1), malformed rc=" << usage_rc << " (want 2), json "
     << (json_ok ? "valid" : "INVALID");
  return {ok_rc == 0 && fail_rc == 1 && usage_rc == 2 && json_ok, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"power rule", power_rule},
      {"elementary derivatives", elementary_derivatives},
      {"corpus ad-vs-fd agreement", corpus_agreement},
      {"remainder order", remainder_order},
      {"laplacian of z^2", laplacian_square},
      {"regularity of laplacian(z^3)", laplacian_cube_regular},
      {"logarithm contract", logarithm_contract},
      {"one-sided quotient witness", quotient_witness},
      {"sandwich algebra", sandwich_algebra},
      {"cli contract", cli_contract},
  };

  int failures = 0;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("criterion %2d %-30s %s  (%s)\n", idx, c.name,
                o.ok ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::printf("%d/10 acceptance criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
