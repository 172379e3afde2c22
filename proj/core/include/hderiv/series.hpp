#pragma once

#include <stdexcept>
#include <string>

#include "hderiv/quaternion.hpp"

namespace hderiv {

// Truncation policy for the elementary power series: keep adding terms until
// a certified bound on the dropped tail falls below eps, giving up past
// degree n_max.
struct SeriesTruncation {
  double eps = 1e-14;
  int n_max = 200;
};

enum class Elementary { exp, sin, cos };

struct SeriesResult {
  Quaternion value;
  int degree;         // highest power of z included in the partial sum
  double tail_bound;  // certified bound on everything dropped
};

class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& msg, double achieved, int degree)
      : std::runtime_error(msg), achieved_(achieved), degree_(degree) {}
  /// Best tail bound reachable within the degree cap.
  double achieved() const { return achieved_; }
  int degree() const { return degree_; }

 private:
  double achieved_;
  int degree_;
};

SeriesResult eval_elementary(Elementary kind, const Quaternion& z,
                             const SeriesTruncation& trunc = {});

Quaternion eval_exp(const Quaternion& z, const SeriesTruncation& trunc = {});
Quaternion eval_sin(const Quaternion& z, const SeriesTruncation& trunc = {});
Quaternion eval_cos(const Quaternion& z, const SeriesTruncation& trunc = {});

// Bound on the norm of the degree-n increment term of the exponential-type
// expansion around z, evaluated at a step of norm abs_h:
//   (2^n/n!) * abs_h^2 / (1 - abs_h)           for abs_z < 1,
//   (2^n/n!) * abs_z^(n-2) * abs_h^2 / (1 - abs_h)  otherwise.
// Requires 0 <= abs_h < 1 and n >= 2. The 2^n/n! factor is accumulated as a
// running product of 2/k, so nothing overflows on the way.
double tail_bound(double abs_z, double abs_h, int n);

}  // namespace hderiv
