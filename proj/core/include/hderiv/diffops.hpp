#pragma once

#include <array>
#include <functional>

#include "hderiv/quaternion.hpp"

namespace hderiv {

using QuatFn = std::function<Quaternion(const Quaternion&)>;

enum class Scheme { central, forward };

struct DiffConfig {
  double step = 1e-5;
  Scheme scheme = Scheme::central;
  double tol = 1e-6;  // agreement tolerance used by the check layer
};

// Wider steps for stencils that divide by step^2 or stack two operators.
inline constexpr double kSecondOrderStep = 1e-3;
inline constexpr double kNestedStep = 1e-2;

/// Finite-difference partial derivative along the real axis.
Quaternion fd_partial_x0(const QuatFn& f, const Quaternion& z0,
                         const DiffConfig& cfg = {});

// One-sided difference quotient along direction dir with scale s:
// right multiplies the increment by h^{-1} from the right, left from the
// left, h = dir * s. Throws std::domain_error when dir = 0 or s = 0.
Quaternion directional_quotient(const QuatFn& f, const Quaternion& z0,
                                const Quaternion& dir, Side side, double s);

/// Fueter operator: sum_k (df/dx_k) e_k (right) or e_k (df/dx_k) (left).
Quaternion fueter_apply(const QuatFn& f, const Quaternion& z0, Side side,
                        const DiffConfig& cfg = {});

/// Four-variable Laplacian by second central differences.
Quaternion laplacian(const QuatFn& f, const Quaternion& z0,
                     const DiffConfig& cfg = DiffConfig{kSecondOrderStep});

/// Fixed probe set of 8 unit directions spanning real, imaginary and mixed.
const std::array<Quaternion, 8>& probe_directions();

struct QuotientSpread {
  std::array<Quaternion, 8> quotients;  // one per probe direction
  double max_difference;                // largest pairwise gap
};

// Difference quotients along the probe set. A genuinely direction-dependent
// limit shows up as a large max_difference; a linear-plus-constant map in z
// collapses it to stencil noise.
QuotientSpread directional_spread(const QuatFn& f, const Quaternion& z0,
                                  Side side, double s);

}  // namespace hderiv
