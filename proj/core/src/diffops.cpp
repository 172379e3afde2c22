#include "hderiv/diffops.hpp"

#include <cmath>
#include <stdexcept>

namespace hderiv {

namespace {

Quaternion partial(const QuatFn& f, const Quaternion& z0, int k,
                   const DiffConfig& cfg) {
  const Quaternion e = Quaternion::unit(k);
  const double s = cfg.step;
  if (cfg.scheme == Scheme::central) {
    return (f(z0 + e * s) - f(z0 - e * s)) / (2.0 * s);
  }
  return (f(z0 + e * s) - f(z0)) / s;
}

}  // namespace

Quaternion fd_partial_x0(const QuatFn& f, const Quaternion& z0,
                         const DiffConfig& cfg) {
  return partial(f, z0, 0, cfg);
}

Quaternion directional_quotient(const QuatFn& f, const Quaternion& z0,
                                const Quaternion& dir, Side side, double s) {
  if (dir == Quaternion{} || s == 0.0) {
    throw std::domain_error("directional quotient needs a nonzero direction and scale");
  }
  const Quaternion h = dir * s;
  const Quaternion diff = f(z0 + h) - f(z0);
  const Quaternion hi = inverse(h);
  return side == Side::right ? diff * hi : hi * diff;
}

Quaternion fueter_apply(const QuatFn& f, const Quaternion& z0, Side side,
                        const DiffConfig& cfg) {
  Quaternion r;
  for (int k = 0; k < 4; ++k) {
    const Quaternion df = partial(f, z0, k, cfg);
    const Quaternion e = Quaternion::unit(k);
    r += side == Side::right ? df * e : e * df;
  }
  return r;
}

Quaternion laplacian(const QuatFn& f, const Quaternion& z0,
                     const DiffConfig& cfg) {
  const double s = cfg.step;
  const Quaternion f0 = f(z0);
  Quaternion r;
  for (int k = 0; k < 4; ++k) {
    const Quaternion e = Quaternion::unit(k);
    r += (f(z0 + e * s) - f0 * 2.0 + f(z0 - e * s)) / (s * s);
  }
  return r;
}

const std::array<Quaternion, 8>& probe_directions() {
  static const double s2 = 1.0 / std::sqrt(2.0);
  static const double s3 = 1.0 / std::sqrt(3.0);
  static const std::array<Quaternion, 8> dirs = {{
      {1, 0, 0, 0},
      {0, 1, 0, 0},
      {0, 0, 1, 0},
      {0, 0, 0, 1},
      {s2, s2, 0, 0},
      {s2, 0, s2, 0},
      {s2, 0, 0, s2},
      {0, s3, s3, s3},
  }};
  return dirs;
}

QuotientSpread directional_spread(const QuatFn& f, const Quaternion& z0,
                                  Side side, double s) {
  QuotientSpread r{};
  const auto& dirs = probe_directions();
  for (size_t i = 0; i < dirs.size(); ++i) {
    r.quotients[i] = directional_quotient(f, z0, dirs[i], side, s);
  }
  r.max_difference = 0.0;
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      r.max_difference =
          std::max(r.max_difference, abs(r.quotients[i] - r.quotients[j]));
    }
  return r;
}

}  // namespace hderiv
