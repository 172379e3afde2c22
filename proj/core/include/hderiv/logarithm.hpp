#pragma once

#include "hderiv/quaternion.hpp"
#include "hderiv/sandwich.hpp"
#include "hderiv/series.hpp"

namespace hderiv {

// Truncation ranges and residual target for the implicit log-derivative
// solve. m_max and j_max cut the double series of the coefficient form.
struct LogSolveConfig {
  int m_max = 40;
  int j_max = 40;
  double eps = 1e-10;
};

// Principal logarithm w = ln|z| + (v/|v|) * atan2(|v|, x0) where v is the
// imaginary part. The imaginary norm of w stays within [0, pi]. Throws
// std::domain_error at 0 and on the negative real axis (branch points of
// the principal choice).
Quaternion principal_log(const Quaternion& z);

struct LogDerivativeResult {
  Quaternion w;        // principal log of the input
  Quaternion w_prime;  // derivative of the log at the input
  double residual;     // |L(w_prime) - 1| measured against the series
                       // differential at w, not the solver's own truncation
  double condition;    // inf-norm condition estimate of the 4x4 solve
};

// Derivative of the principal log obtained implicitly: the exponential's
// first-order increment form L at w satisfies L(w') = 1, a 4x4 real linear
// system. Throws TruncationError when the residual stays above eps
// (increase m_max/j_max), SolveError when the system is singular.
LogDerivativeResult log_derivative(const Quaternion& z,
                                   const LogSolveConfig& cfg = {});

// The truncated coefficient form sum_m (sum_j w^j/(m+j+1)!) h w^m used by
// the solver. Exposed so it can be cross-checked against the series
// machinery.
SandwichForm log_solver_form(const Quaternion& w, const LogSolveConfig& cfg = {});

// Full differential of the principal log at z, as the inverse of the
// exponential's differential at w. Its trace agrees with
// log_derivative(z).w_prime; composite expressions chain through it.
CanonicalSandwich log_differential(const Quaternion& z,
                                   const SeriesTruncation& trunc = {},
                                   double* condition = nullptr);

}  // namespace hderiv
