#include "hderiv/sandwich.hpp"

#include <cmath>
#include <limits>

namespace hderiv {

RealMatrix4 RealMatrix4::identity() {
  RealMatrix4 r;
  for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
  return r;
}

RealMatrix4 RealMatrix4::operator*(const RealMatrix4& o) const {
  RealMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

std::array<double, 4> RealMatrix4::apply(const std::array<double, 4>& v) const {
  std::array<double, 4> r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
  return r;
}

Quaternion apply(const SandwichForm& f, const Quaternion& h) {
  Quaternion r;
  for (const auto& t : f.terms) r += t.a * h * t.b;
  return r;
}

Quaternion apply(const CanonicalSandwich& f, const Quaternion& h) {
  Quaternion r;
  for (int k = 0; k < 4; ++k) r += Quaternion::unit(k) * h * f.b[k];
  return r;
}

Quaternion trace(const SandwichForm& f) {
  Quaternion r;
  const Quaternion one{1.0};
  for (const auto& t : f.terms) r += t.a * one * t.b;
  return r;
}

Quaternion trace(const CanonicalSandwich& f) {
  Quaternion r;
  const Quaternion one{1.0};
  for (int k = 0; k < 4; ++k) r += Quaternion::unit(k) * one * f.b[k];
  return r;
}

namespace {

template <class Form>
RealMatrix4 matrix_of(const Form& f) {
  RealMatrix4 r;
  for (int j = 0; j < 4; ++j) {
    auto col = coords(apply(f, Quaternion::unit(j)));
    for (int i = 0; i < 4; ++i) r.m[i][j] = col[i];
  }
  return r;
}

}  // namespace

RealMatrix4 to_matrix(const SandwichForm& f) { return matrix_of(f); }
RealMatrix4 to_matrix(const CanonicalSandwich& f) { return matrix_of(f); }

CanonicalSandwich from_matrix(const RealMatrix4& m) {
  // Let T be the map with matrix m. Writing T(h) = sum_m e_m h b_m, the
  // identity sum_j conj(e_j) q e_j = 4 Re(q) isolates each coefficient:
  //   b_m = (1/4) sum_j conj(e_j) conj(e_m) T(e_j).
  // This is the basis decomposition with the 16x16 system solved once in
  // closed form; no elimination happens per call.
  std::array<Quaternion, 4> te;
  for (int j = 0; j < 4; ++j) {
    te[j] = from_coords({m(0, j), m(1, j), m(2, j), m(3, j)});
  }
  CanonicalSandwich c;
  for (int k = 0; k < 4; ++k) {
    Quaternion s;
    for (int j = 0; j < 4; ++j) {
      s += conj(Quaternion::unit(j)) * conj(Quaternion::unit(k)) * te[j];
    }
    c.b[k] = s / 4.0;
  }
  return c;
}

CanonicalSandwich canonicalize(const SandwichForm& f) {
  return from_matrix(to_matrix(f));
}

SandwichForm as_form(const CanonicalSandwich& f) {
  SandwichForm r;
  r.terms.reserve(4);
  for (int k = 0; k < 4; ++k) r.terms.push_back({Quaternion::unit(k), f.b[k]});
  return r;
}

CanonicalSandwich compose(const SandwichForm& outer, const SandwichForm& inner) {
  SandwichForm r;
  r.terms.reserve(outer.terms.size() * inner.terms.size());
  for (const auto& o : outer.terms)
    for (const auto& i : inner.terms) r.terms.push_back({o.a * i.a, i.b * o.b});
  return canonicalize(r);
}

CanonicalSandwich compose(const CanonicalSandwich& outer, const CanonicalSandwich& inner) {
  return compose(as_form(outer), as_form(inner));
}

std::string to_string(const SandwichForm& f) {
  if (f.terms.empty()) return "0";
  std::string s;
  for (const auto& t : f.terms) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(t.a) + ") h (" + to_string(t.b) + ")";
  }
  return s;
}

namespace {

double inf_norm(const RealMatrix4& m) {
  double n = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += std::fabs(m(i, j));
    n = std::max(n, row);
  }
  return n;
}

// Row-reduce [a | rhs...] in place with partial pivoting. rhs holds ncols
// right-hand sides stored row-major in a flat array.
void eliminate(std::array<std::array<double, 4>, 4>& a, double* rhs, int ncols) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) {
      throw SolveError("singular linear system",
                       std::numeric_limits<double>::infinity());
    }
    if (piv != col) {
      std::swap(a[piv], a[col]);
      for (int c = 0; c < ncols; ++c)
        std::swap(rhs[piv * ncols + c], rhs[col * ncols + c]);
    }
    for (int r = col + 1; r < 4; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
      for (int c = 0; c < ncols; ++c)
        rhs[r * ncols + c] -= f * rhs[col * ncols + c];
    }
  }
  for (int col = 3; col >= 0; --col) {
    for (int c = 0; c < ncols; ++c) {
      double s = rhs[col * ncols + c];
      for (int k = col + 1; k < 4; ++k) s -= a[col][k] * rhs[k * ncols + c];
      rhs[col * ncols + c] = s / a[col][col];
    }
  }
}

}  // namespace

std::array<double, 4> solve(const RealMatrix4& m, const std::array<double, 4>& rhs) {
  auto a = m.m;
  std::array<double, 4> x = rhs;
  eliminate(a, x.data(), 1);
  return x;
}

RealMatrix4 inverse(const RealMatrix4& m) {
  auto a = m.m;
  RealMatrix4 inv = RealMatrix4::identity();
  eliminate(a, &inv.m[0][0], 4);
  return inv;
}

double condition_inf(const RealMatrix4& m) {
  try {
    return inf_norm(m) * inf_norm(inverse(m));
  } catch (const SolveError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace hderiv
