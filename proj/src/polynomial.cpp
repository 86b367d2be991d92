#include "rkstab/polynomial.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rkstab {

namespace {

template <typename T>
T horner(const std::vector<double>& coeffs, T z) {
  T acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double max_abs_coeff(const std::vector<double>& coeffs) {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
  canonicalize();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  canonicalize();
}

void Polynomial::canonicalize() {
  while (!coeffs_.empty() && std::abs(coeffs_.back()) < tol::canonical_strip)
    coeffs_.pop_back();
}

double Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<size_t>(k)];
}

double Polynomial::eval(double x) const { return horner(coeffs_, x); }

Complex Polynomial::eval(Complex z) const { return horner(coeffs_, z); }

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (size_t k = 0; k < b.coeffs_.size(); ++k) out[k] -= b.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> out = p.coeffs_;
  for (double& c : out) c *= s;
  return Polynomial(std::move(out));
}

PowerSeries::PowerSeries(std::vector<double> c) : coeffs(std::move(c)) {
  if (coeffs.empty())
    throw std::invalid_argument("PowerSeries: truncation order must be >= 0");
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num(std::move(numerator)), den(std::move(denominator)) {
  if (den.is_zero())
    throw ValidationError("rational function: denominator is identically zero");
  const double scale = std::max(1.0, max_abs_coeff(den.coeffs()));
  if (std::abs(den.coeff(0)) < tol::canonical_strip * scale)
    throw ValidationError("rational function: denominator vanishes at the origin");
}

PowerSeries series_div(const Polynomial& num, const Polynomial& den, int order) {
  if (order < 0) throw std::invalid_argument("series_div: order must be >= 0");
  const double scale = std::max(1.0, max_abs_coeff(den.coeffs()));
  const double d0 = den.coeff(0);
  if (den.is_zero() || std::abs(d0) < tol::canonical_strip * scale)
    throw std::domain_error("series at origin undefined: denominator vanishes at z = 0");

  std::vector<double> a(static_cast<size_t>(order) + 1, 0.0);
  for (int n = 0; n <= order; ++n) {
    double acc = num.coeff(n);
    const int jmax = std::min(n, den.degree());
    for (int j = 1; j <= jmax; ++j) acc -= den.coeff(j) * a[static_cast<size_t>(n - j)];
    a[static_cast<size_t>(n)] = acc / d0;
  }
  return PowerSeries(std::move(a));
}

}  // namespace rkstab
