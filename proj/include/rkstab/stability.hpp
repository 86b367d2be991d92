#pragma once

#include <string>
#include <vector>

#include "rkstab/polynomial.hpp"
#include "rkstab/tableau.hpp"

namespace rkstab {

/// Stability function R(z) = num(z)/den(z) of a tableau, normalized so
/// den(0) = 1. Explicit methods have den = [1], i.e. R is a polynomial.
struct StabilityFunction {
  RationalFunction rational;
  std::string source;  // tableau name

  bool is_polynomial() const { return rational.den.degree() == 0; }
};

/// R(z) = 1 + z b^T (I - zA)^{-1} 1, with the stage system solved by dense
/// LU. Throws PoleError when I - zA is singular.
Complex stability_value(const ButcherTableau& t, Complex z);

/// Closed form of R: den(z) = det(I - zA) and num(z) = det(I - zA + z 1 b^T).
///
/// Both determinants are fitted as polynomials from evaluations at s+1
/// Chebyshev sample points in [-1/2, 1/2]. A strictly lower-triangular A is
/// nilpotent, so that case short-circuits to the exact finite Neumann sum
/// 1 + sum_k z^{k+1} b^T A^k 1 with den = [1].
StabilityFunction stability_function(const ButcherTableau& t);

/// Stability polynomial of the PC scheme with m corrections:
/// 1 + z b^T 1 + z^2 b^T A 1 + ... + z^{m+1} b^T A^m 1,
/// accumulated by repeated matrix-vector products (A^n is never formed).
Polynomial pc_stability_polynomial(const PCScheme& scheme);

/// Taylor coefficients of the corrector's R at the origin through order N,
/// via the direct derivative formula: [1, b^T 1, b^T A 1, ..., b^T A^{N-1} 1]
/// (coefficients stored Taylor-normalized, the n! already cancelled).
PowerSeries corrector_taylor_coefficients(const ButcherTableau& t, int order);

struct TaylorCheck {
  int corrections = 0;  // m
  double max_discrepancy = 0.0;
};

struct TaylorTruncationReport {
  std::string source;
  std::vector<TaylorCheck> checks;
  double max_discrepancy = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Cross-checks, for every m <= m_max, the PC stability polynomial against
/// the degree-(m+1) Taylor polynomial of the corrector's closed-form R
/// obtained independently by power-series division. The PC stability
/// polynomial of a consistent corrector is exactly that truncation.
TaylorTruncationReport verify_taylor_truncation(const ButcherTableau& t, int m_max);

struct CorrectorPoles {
  std::vector<Complex> poles;  // empty for explicit correctors
  double radius = 0.0;         // min |pole|; +inf when there are none
};

/// Poles of the corrector's stability function and the radius of the open
/// disc around the origin on which its Taylor series converges.
CorrectorPoles poles_and_radius(const ButcherTableau& t);

/// Stability series, to truncation order N, of the scheme whose predictor is
/// the explicit method with strictly lower-triangular matrix P on the
/// corrector's abscissae:
///   Y(0) = y + h P F(Y(0)),  Y(k) = y + h A F(Y(k-1)),  y+ = y + h b^T F(Y(m)).
/// Exploratory: the series is reported as computed; nothing is asserted
/// about it being a Taylor truncation of the corrector's R.
PowerSeries general_predictor_series(const Eigen::MatrixXd& predictor,
                                     const ButcherTableau& corrector, int corrections,
                                     int order);

}  // namespace rkstab
