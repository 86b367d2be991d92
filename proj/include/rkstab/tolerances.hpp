#pragma once

#include <algorithm>
#include <cmath>

namespace rkstab {

namespace tol {

/// Coefficient comparisons: relative tolerance with an absolute floor.
inline constexpr double coeff_rel = 1e-12;
inline constexpr double coeff_abs = 1e-14;

/// Trailing-coefficient cutoff for canonical polynomial form.
inline constexpr double canonical_strip = 1e-14;

/// Residual bound for polynomial roots, relative to max |coefficient|.
inline constexpr double root_residual = 1e-10;

/// Region boundary vertices satisfy | |R(z)| - 1 | <= boundary.
inline constexpr double boundary = 1e-6;

}  // namespace tol

inline bool almost_equal(double a, double b, double rel = tol::coeff_rel,
                         double abs_floor = tol::coeff_abs) {
  const double diff = std::abs(a - b);
  return diff <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace rkstab
