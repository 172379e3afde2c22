#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "hderiv/quaternion.hpp"

namespace hderiv {

// A finite sum h -> sum_k a_k * h * b_k. Every real-linear map on H can be
// written this way; derivatives are carried around in this shape.
struct SandwichTerm {
  Quaternion a;
  Quaternion b;
};

struct SandwichForm {
  std::vector<SandwichTerm> terms;
};

// Same map with the left factors pinned to the basis (1, i1, i2, i3):
// h -> h*b[0] + i1*h*b[1] + i2*h*b[2] + i3*h*b[3]. This representation is
// unique, so canonical forms can be compared coefficient by coefficient.
struct CanonicalSandwich {
  std::array<Quaternion, 4> b{};

  static CanonicalSandwich zero() { return {}; }
  static CanonicalSandwich identity() {
    CanonicalSandwich c;
    c.b[0] = Quaternion{1.0};
    return c;
  }

  bool operator==(const CanonicalSandwich&) const = default;
};

/// Matrix of a real-linear map on H in the coordinate basis, row-major.
struct RealMatrix4 {
  std::array<std::array<double, 4>, 4> m{};

  static RealMatrix4 identity();

  double& operator()(int r, int c) { return m[r][c]; }
  double operator()(int r, int c) const { return m[r][c]; }

  RealMatrix4 operator*(const RealMatrix4& o) const;
  std::array<double, 4> apply(const std::array<double, 4>& v) const;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& msg, double condition)
      : std::runtime_error(msg), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

Quaternion apply(const SandwichForm& f, const Quaternion& h);
Quaternion apply(const CanonicalSandwich& f, const Quaternion& h);

// Value of the map at h = 1, i.e. sum_k a_k b_k. Summed in term order with
// the same arithmetic as apply(f, 1), so the two agree bit for bit.
Quaternion trace(const SandwichForm& f);
Quaternion trace(const CanonicalSandwich& f);

RealMatrix4 to_matrix(const SandwichForm& f);
RealMatrix4 to_matrix(const CanonicalSandwich& f);

/// Unique canonical coefficients of the linear map encoded by a matrix.
CanonicalSandwich from_matrix(const RealMatrix4& m);

CanonicalSandwich canonicalize(const SandwichForm& f);

SandwichForm as_form(const CanonicalSandwich& f);

// Composition outer(inner(h)), expanded termwise and re-canonicalized.
CanonicalSandwich compose(const SandwichForm& outer, const SandwichForm& inner);
CanonicalSandwich compose(const CanonicalSandwich& outer, const CanonicalSandwich& inner);

/// Debug rendering "(a_0) h (b_0) + (a_1) h (b_1) + ...".
std::string to_string(const SandwichForm& f);

// Dense 4x4 helpers (Gaussian elimination with partial pivoting).
std::array<double, 4> solve(const RealMatrix4& m, const std::array<double, 4>& rhs);
RealMatrix4 inverse(const RealMatrix4& m);
double condition_inf(const RealMatrix4& m);

}  // namespace hderiv
