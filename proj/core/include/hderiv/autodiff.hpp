#pragma once

#include "hderiv/quaternion.hpp"
#include "hderiv/sandwich.hpp"
#include "hderiv/series.hpp"

namespace hderiv {

// Forward-mode node: the value of an expression at the base point together
// with its first-order differential, kept canonical after every operation.
struct HDual {
  Quaternion value;
  CanonicalSandwich differential;
};

/// The derivative is the differential evaluated at h = 1.
Quaternion derivative(const HDual& f);

HDual lift_var(const Quaternion& z0);
HDual lift_const(const Quaternion& c);

HDual d_add(const HDual& f, const HDual& g);
HDual d_sub(const HDual& f, const HDual& g);
HDual d_scale(const Quaternion& c, const HDual& f, Side side);
HDual d_mul(const HDual& f, const HDual& g);

/// Reciprocal: value v^{-1}, differential h -> -v^{-1} df(h) v^{-1}.
HDual d_inv(const HDual& f);

/// Integer power by repeated products; n < 0 goes through d_inv.
HDual d_pow(const HDual& f, int n);

struct SeriesDiagnostics {
  int degree = 0;
  double tail_bound = 0.0;
};

/// exp/sin/cos of a dual, series evaluated at f.value and chained through
/// the inner differential.
HDual d_elementary(Elementary kind, const HDual& f,
                   const SeriesTruncation& trunc = {},
                   SeriesDiagnostics* diag = nullptr);

/// Chain rule with a precomputed outer differential at f.value.
HDual d_compose(const CanonicalSandwich& outer_differential,
                const Quaternion& outer_value, const HDual& f);

// First-order increment form of the elementary series at z: the terms
// (sum_j a_{m+1+j} z^j, z^m) where a_n is the n-th series coefficient. Its
// trace reproduces the closed-form derivative; the log solver checks
// against it.
SandwichForm elementary_differential(Elementary kind, const Quaternion& z,
                                     const SeriesTruncation& trunc = {},
                                     SeriesDiagnostics* diag = nullptr);

}  // namespace hderiv
