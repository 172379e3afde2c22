#pragma once

#include <random>

#include "hderiv/quaternion.hpp"

// Deterministic random sampling shared by the test binaries. Every suite
// seeds its own std::mt19937 so runs are reproducible.

inline hderiv::Quaternion random_quaternion(std::mt19937& rng, double max_norm,
                                            double min_norm = 0.05) {
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(min_norm, max_norm);
  for (;;) {
    hderiv::Quaternion q{comp(rng), comp(rng), comp(rng), comp(rng)};
    double n = hderiv::abs(q);
    if (n < 1e-9) continue;
    return q * (radius(rng) / n);
  }
}

inline hderiv::Quaternion random_unit(std::mt19937& rng) {
  return random_quaternion(rng, 1.0, 1.0);
}

inline hderiv::Quaternion random_unit_imaginary(std::mt19937& rng) {
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  for (;;) {
    hderiv::Quaternion v{0.0, comp(rng), comp(rng), comp(rng)};
    double n = hderiv::abs(v);
    if (n < 1e-9) continue;
    return v / n;
  }
}
