#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>

namespace hderiv {

// Quaternion z = x0 + x1*i1 + x2*i2 + x3*i3 with double coordinates.
// Products follow the Hamilton relations
//   i1*i2 = i3,  i2*i3 = i1,  i3*i1 = i2,  i1^2 = i2^2 = i3^2 = -1,
// so multiplication is associative but not commutative.
struct Quaternion {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double real) : x0(real) {}  // reals embed in H
  constexpr Quaternion(double a, double b, double c, double d)
      : x0(a), x1(b), x2(c), x3(d) {}

  /// Basis element e_k for k in 0..3 (e_0 = 1, e_1 = i1, ...).
  static constexpr Quaternion unit(int k) {
    switch (k) {
      case 0: return {1, 0, 0, 0};
      case 1: return {0, 1, 0, 0};
      case 2: return {0, 0, 1, 0};
      default: return {0, 0, 0, 1};
    }
  }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator-() const { return {-x0, -x1, -x2, -x3}; }

  constexpr Quaternion operator+(const Quaternion& o) const {
    return {x0 + o.x0, x1 + o.x1, x2 + o.x2, x3 + o.x3};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {x0 - o.x0, x1 - o.x1, x2 - o.x2, x3 - o.x3};
  }
  constexpr Quaternion operator*(const Quaternion& o) const {
    return {x0 * o.x0 - x1 * o.x1 - x2 * o.x2 - x3 * o.x3,
            x0 * o.x1 + x1 * o.x0 + x2 * o.x3 - x3 * o.x2,
            x0 * o.x2 - x1 * o.x3 + x2 * o.x0 + x3 * o.x1,
            x0 * o.x3 + x1 * o.x2 - x2 * o.x1 + x3 * o.x0};
  }

  constexpr Quaternion operator*(double s) const {
    return {x0 * s, x1 * s, x2 * s, x3 * s};
  }
  constexpr Quaternion operator/(double s) const {
    return {x0 / s, x1 / s, x2 / s, x3 / s};
  }

  constexpr Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  constexpr Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
  constexpr Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

constexpr Quaternion conj(const Quaternion& q) { return {q.x0, -q.x1, -q.x2, -q.x3}; }

constexpr double norm_sq(const Quaternion& q) {
  return q.x0 * q.x0 + q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3;
}

inline double abs(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

constexpr double scalar_part(const Quaternion& q) { return q.x0; }

constexpr Quaternion imaginary_part(const Quaternion& q) {
  return {0.0, q.x1, q.x2, q.x3};
}

inline Quaternion inverse(const Quaternion& q) {
  double n = norm_sq(q);
  if (n == 0.0) throw std::domain_error("inverse of zero quaternion");
  return conj(q) / n;
}

/// q^n for integer n; negative n inverts first, so q must be nonzero then.
inline Quaternion pow_int(const Quaternion& q, int n) {
  if (n < 0) return pow_int(inverse(q), -n);
  Quaternion r{1.0};
  for (int k = 0; k < n; ++k) r *= q;
  return r;
}

constexpr std::array<double, 4> coords(const Quaternion& q) {
  return {q.x0, q.x1, q.x2, q.x3};
}

constexpr Quaternion from_coords(const std::array<double, 4>& c) {
  return {c[0], c[1], c[2], c[3]};
}

inline bool approx_equal(const Quaternion& a, const Quaternion& b, double tol) {
  return std::fabs(a.x0 - b.x0) <= tol && std::fabs(a.x1 - b.x1) <= tol &&
         std::fabs(a.x2 - b.x2) <= tol && std::fabs(a.x3 - b.x3) <= tol;
}

// Which algebraic recipe real_coordinates uses. Both express the four real
// coordinates of z purely through quaternion products: "hausdorff" conjugates
// z by the imaginary units, "conjugate" combines z with conj(z).
enum class CoordinateMethod { hausdorff, conjugate };

/// Recover (x0, x1, x2, x3) from z using quaternion arithmetic only.
inline std::array<double, 4> real_coordinates(const Quaternion& z,
                                              CoordinateMethod method) {
  const Quaternion i1 = Quaternion::unit(1);
  const Quaternion i2 = Quaternion::unit(2);
  const Quaternion i3 = Quaternion::unit(3);
  std::array<Quaternion, 4> parts;
  if (method == CoordinateMethod::hausdorff) {
    // 4*x0       = z - i1 z i1 - i2 z i2 - i3 z i3
    // 4*x1*i1    = z - i1 z i1 + i2 z i2 + i3 z i3, and cyclically for x2, x3
    Quaternion c1 = i1 * z * i1, c2 = i2 * z * i2, c3 = i3 * z * i3;
    parts[0] = (z - c1 - c2 - c3) / 4.0;
    parts[1] = inverse(i1 * 4.0) * (z - c1 + c2 + c3);
    parts[2] = inverse(i2 * 4.0) * (z + c1 - c2 + c3);
    parts[3] = inverse(i3 * 4.0) * (z + c1 + c2 - c3);
  } else {
    Quaternion zc = conj(z);
    parts[0] = (zc + z) / 2.0;
    parts[1] = (i1 * zc - z * i1) * 0.5;  // (i1 conj(z) - z i1)/2 = x1 + 0*...
    parts[2] = (i2 * zc - z * i2) * 0.5;
    parts[3] = (i3 * zc - z * i3) * 0.5;
  }
  return {scalar_part(parts[0]), scalar_part(parts[1]), scalar_part(parts[2]),
          scalar_part(parts[3])};
}

// Fixed-notation decimal rendering (never scientific) with enough digits to
// reparse to the same double. Trailing zeros are trimmed.
inline std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  if (std::strpbrk(buf, "eE") != nullptr) {
    int exp10 = static_cast<int>(std::floor(std::log10(std::fabs(v))));
    int frac = exp10 >= 17 ? 0 : 17 - exp10 - 1;
    if (frac < 0) frac = 0;
    if (frac > 340) frac = 340;
    std::snprintf(buf, sizeof buf, "%.*f", frac, v);
  }
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    size_t last = s.find_last_not_of('0');
    if (s[last] == '.') --last;
    s.erase(last + 1);
  }
  return s;
}

/// Text form "a+bi+cj+dk" with zero components skipped ("0" if all vanish).
inline std::string to_string(const Quaternion& q) {
  const double comp[4] = {q.x0, q.x1, q.x2, q.x3};
  const char* unit[4] = {"", "i", "j", "k"};
  std::string s;
  for (int k = 0; k < 4; ++k) {
    if (comp[k] == 0.0) continue;
    if (!s.empty() && comp[k] > 0.0) s += '+';
    if (comp[k] < 0.0) s += '-';
    s += format_real(std::fabs(comp[k]));
    s += unit[k];
  }
  return s.empty() ? "0" : s;
}

/// Which side a scalar multiplies from, and which side h^{-1} lands on in
/// directional difference quotients.
enum class Side { left, right };

}  // namespace hderiv
