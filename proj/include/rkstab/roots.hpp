#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "rkstab/polynomial.hpp"

namespace rkstab {

/// All complex roots of p, with multiplicity, sorted by (re, im).
///
/// Method: eigenvalues of the monic companion matrix, followed by a few
/// Newton polish steps that are kept only while they shrink the residual.
/// Residuals satisfy |p(r)| <= tol::root_residual * max|coeff|.
std::vector<Complex> poly_roots(const Polynomial& p);

/// Bisection on [lo, hi]. Requires a strict sign change f(lo)*f(hi) < 0;
/// returns the midpoint of the final bracket of width <= tol.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("bisect: requires lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("bisect: requires tol > 0");
  double flo = f(lo);
  double fhi = f(hi);
  if (!(flo * fhi < 0.0))
    throw std::invalid_argument("bisect: no sign change on [lo, hi]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at rounding limit
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rkstab
