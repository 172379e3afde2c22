#include "hderiv/series.hpp"

#include <cmath>
#include <limits>

namespace hderiv {

namespace {

void validate(const SeriesTruncation& trunc) {
  if (!(trunc.eps > 0.0)) throw std::invalid_argument("series eps must be positive");
  if (trunc.n_max < 3) throw std::invalid_argument("series n_max must be at least 3");
}

// Remainder of the exponential majorant sum_{n > d} r^n/n! by the ratio test:
// r^{d+1}/(d+1)! * 1/(1 - r/(d+2)), valid once d+2 > r. p is r^{d+1}/(d+1)!.
double majorant_tail(double r, int d, double p) {
  if (static_cast<double>(d) + 2.0 <= r) return std::numeric_limits<double>::infinity();
  return p / (1.0 - r / (static_cast<double>(d) + 2.0));
}

}  // namespace

SeriesResult eval_elementary(Elementary kind, const Quaternion& z,
                             const SeriesTruncation& trunc) {
  validate(trunc);
  const double r = abs(z);
  const int step = kind == Elementary::exp ? 1 : 2;

  // First term and its degree.
  Quaternion term = kind == Elementary::sin ? z : Quaternion{1.0};
  int d = kind == Elementary::sin ? 1 : 0;
  Quaternion sum = term;

  // p = r^{d+1}/(d+1)! tracked incrementally alongside d.
  double p = r;
  for (int k = 2; k <= d + 1; ++k) p *= r / k;

  while (true) {
    double bound = majorant_tail(r, d, p);
    if (bound <= trunc.eps) return {sum, d, bound};
    if (d + step > trunc.n_max) {
      throw TruncationError("series truncation: tail bound " +
                                std::to_string(bound) + " above eps at degree cap",
                            bound, d);
    }
    if (kind == Elementary::exp) {
      term = term * z / (d + 1);
      d += 1;
      p *= r / (d + 1);
    } else {
      // sin/cos skip every other degree and alternate sign
      term = term * z * z * (-1.0 / ((d + 1) * (d + 2)));
      d += 2;
      p *= r / d;
      p *= r / (d + 1);
    }
    sum += term;
  }
}

Quaternion eval_exp(const Quaternion& z, const SeriesTruncation& trunc) {
  return eval_elementary(Elementary::exp, z, trunc).value;
}

Quaternion eval_sin(const Quaternion& z, const SeriesTruncation& trunc) {
  return eval_elementary(Elementary::sin, z, trunc).value;
}

Quaternion eval_cos(const Quaternion& z, const SeriesTruncation& trunc) {
  return eval_elementary(Elementary::cos, z, trunc).value;
}

double tail_bound(double abs_z, double abs_h, int n) {
  if (!(abs_h >= 0.0) || abs_h >= 1.0) {
    throw std::domain_error("tail_bound requires 0 <= |h| < 1");
  }
  if (n < 2) throw std::domain_error("tail_bound requires n >= 2");
  double c = 1.0;
  for (int k = 1; k <= n; ++k) c *= 2.0 / k;
  if (abs_z >= 1.0) c *= std::pow(abs_z, n - 2);
  return c * abs_h * abs_h / (1.0 - abs_h);
}

}  // namespace hderiv
