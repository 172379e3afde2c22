#include "hderiv/autodiff.hpp"

#include <vector>

namespace hderiv {

Quaternion derivative(const HDual& f) { return trace(f.differential); }

HDual lift_var(const Quaternion& z0) {
  return {z0, CanonicalSandwich::identity()};
}

HDual lift_const(const Quaternion& c) { return {c, CanonicalSandwich::zero()}; }

HDual d_add(const HDual& f, const HDual& g) {
  // Canonical coefficients add componentwise; that already is the canonical
  // form of the concatenated terms.
  HDual r;
  r.value = f.value + g.value;
  for (int k = 0; k < 4; ++k) r.differential.b[k] = f.differential.b[k] + g.differential.b[k];
  return r;
}

HDual d_sub(const HDual& f, const HDual& g) {
  HDual r;
  r.value = f.value - g.value;
  for (int k = 0; k < 4; ++k) r.differential.b[k] = f.differential.b[k] - g.differential.b[k];
  return r;
}

HDual d_scale(const Quaternion& c, const HDual& f, Side side) {
  SandwichForm s;
  s.terms.reserve(4);
  for (int k = 0; k < 4; ++k) {
    const Quaternion e = Quaternion::unit(k);
    if (side == Side::left) {
      s.terms.push_back({c * e, f.differential.b[k]});
    } else {
      s.terms.push_back({e, f.differential.b[k] * c});
    }
  }
  HDual r;
  r.value = side == Side::left ? c * f.value : f.value * c;
  r.differential = canonicalize(s);
  return r;
}

HDual d_mul(const HDual& f, const HDual& g) {
  // d(fg) = df * g(z0) + f(z0) * dg, expanded termwise:
  SandwichForm s;
  s.terms.reserve(8);
  for (int k = 0; k < 4; ++k) {
    s.terms.push_back({Quaternion::unit(k), f.differential.b[k] * g.value});
  }
  for (int k = 0; k < 4; ++k) {
    s.terms.push_back({f.value * Quaternion::unit(k), g.differential.b[k]});
  }
  HDual r;
  r.value = f.value * g.value;
  r.differential = canonicalize(s);
  return r;
}

HDual d_inv(const HDual& f) {
  if (f.value == Quaternion{}) {
    throw std::domain_error("inverse of vanishing function");
  }
  const Quaternion vi = inverse(f.value);
  SandwichForm s;
  s.terms.reserve(4);
  for (int k = 0; k < 4; ++k) {
    s.terms.push_back({-(vi * Quaternion::unit(k)), f.differential.b[k] * vi});
  }
  HDual r;
  r.value = vi;
  r.differential = canonicalize(s);
  return r;
}

HDual d_pow(const HDual& f, int n) {
  if (n < 0) return d_inv(d_pow(f, -n));
  if (n == 0) return lift_const(Quaternion{1.0});
  HDual r = f;
  for (int k = 1; k < n; ++k) r = d_mul(r, f);
  return r;
}

HDual d_compose(const CanonicalSandwich& outer_differential,
                const Quaternion& outer_value, const HDual& f) {
  return {outer_value, compose(outer_differential, f.differential)};
}

namespace {

// Numerator of the n-th series coefficient (the coefficient is sign/n!).
int coeff_sign(Elementary kind, int n) {
  switch (kind) {
    case Elementary::exp:
      return 1;
    case Elementary::sin:
      return n % 2 == 1 ? ((n / 2) % 2 == 0 ? 1 : -1) : 0;
    case Elementary::cos:
      return n % 2 == 0 ? ((n / 2) % 2 == 0 ? 1 : -1) : 0;
  }
  return 0;
}

struct ElementaryExpansion {
  Quaternion value;
  SandwichForm differential;
  int degree;
  double tail;
};

ElementaryExpansion expand(Elementary kind, const Quaternion& z,
                           const SeriesTruncation& trunc) {
  const SeriesResult vr = eval_elementary(kind, z, trunc);

  // The differential keeps one increment degree more than the value sum, so
  // the dropped coefficient mass obeys the same eps bound and the expansion
  // stays exact at z = 0.
  const int n = vr.degree + 1;

  std::vector<Quaternion> zp(n);
  zp[0] = Quaternion{1.0};
  for (int j = 1; j < n; ++j) zp[j] = zp[j - 1] * z;

  std::vector<double> inv_fact(n + 1);
  inv_fact[0] = 1.0;
  for (int k = 1; k <= n; ++k) inv_fact[k] = inv_fact[k - 1] / k;

  SandwichForm d;
  d.terms.reserve(n);
  for (int m = 0; m < n; ++m) {
    Quaternion c;
    for (int j = 0; j + m < n; ++j) {
      int s = coeff_sign(kind, m + 1 + j);
      if (s != 0) c += zp[j] * (s * inv_fact[m + 1 + j]);
    }
    d.terms.push_back({c, zp[m]});
  }
  return {vr.value, std::move(d), vr.degree, vr.tail_bound};
}

}  // namespace

SandwichForm elementary_differential(Elementary kind, const Quaternion& z,
                                     const SeriesTruncation& trunc,
                                     SeriesDiagnostics* diag) {
  auto e = expand(kind, z, trunc);
  if (diag) *diag = {e.degree, e.tail};
  return std::move(e.differential);
}

HDual d_elementary(Elementary kind, const HDual& f, const SeriesTruncation& trunc,
                   SeriesDiagnostics* diag) {
  auto e = expand(kind, f.value, trunc);
  if (diag) *diag = {e.degree, e.tail};
  HDual r;
  r.value = e.value;
  r.differential = compose(e.differential, as_form(f.differential));
  return r;
}

}  // namespace hderiv
