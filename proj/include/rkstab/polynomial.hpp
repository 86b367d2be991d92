#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "rkstab/errors.hpp"
#include "rkstab/tolerances.hpp"

namespace rkstab {

/// Real-coefficient polynomial in z, stored densely: coeffs[k] multiplies z^k.
/// Kept canonical: trailing coefficients below tol::canonical_strip are
/// stripped, so degree() stays stable under arithmetic. The zero polynomial
/// stores no coefficients and reports degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Coefficient of z^k; zero beyond the stored degree.
  double coeff(int k) const;

  /// Horner evaluation.
  double eval(double x) const;
  Complex eval(Complex z) const;

  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);

 private:
  void canonicalize();
  std::vector<double> coeffs_;
};

/// Truncated power series at the origin: coefficients a_0..a_N with the
/// truncation order N explicit. Trailing zeros are kept, unlike Polynomial.
struct PowerSeries {
  std::vector<double> coeffs;

  explicit PowerSeries(std::vector<double> c);
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Ratio num/den of real polynomials with den(0) != 0, so the Taylor series
/// at the origin exists.
struct RationalFunction {
  Polynomial num;
  Polynomial den;

  RationalFunction(Polynomial numerator, Polynomial denominator);
  double eval(double x) const { return num.eval(x) / den.eval(x); }
  Complex eval(Complex z) const { return num.eval(z) / den.eval(z); }
};

/// First N+1 Taylor coefficients of num/den at the origin, from the linear
/// recurrence den[0]*a_n = num[n] - sum_{j>=1} den[j]*a_{n-j}.
/// Throws std::domain_error when the denominator vanishes at the origin.
PowerSeries series_div(const Polynomial& num, const Polynomial& den, int order);

}  // namespace rkstab
