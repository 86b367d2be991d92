#include "rkstab/stability.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "rkstab/roots.hpp"
#include "rkstab/tolerances.hpp"

namespace rkstab {

namespace {

bool strictly_lower_triangular(const Eigen::MatrixXd& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i; j < a.cols(); ++j)
      if (a(i, j) != 0.0) return false;
  return true;
}

// Fit the unique degree-(n-1) polynomial through (xs[i], fs[i]).
Polynomial fit_polynomial(const Eigen::VectorXd& xs, const Eigen::VectorXd& fs) {
  const Eigen::Index n = xs.size();
  Eigen::MatrixXd vandermonde(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    double power = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      vandermonde(r, k) = power;
      power *= xs(r);
    }
  }
  const Eigen::VectorXd a = vandermonde.fullPivLu().solve(fs);
  return Polynomial(std::vector<double>(a.data(), a.data() + n));
}

}  // namespace

Complex stability_value(const ButcherTableau& t, Complex z) {
  const int s = t.stages();
  const Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(s, s) - z * t.A.cast<Complex>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  if (!lu.isInvertible()) throw PoleError(z);
  const Eigen::VectorXcd w = lu.solve(Eigen::VectorXcd::Ones(s));
  Complex acc{};
  for (int i = 0; i < s; ++i) acc += t.b(i) * w(i);
  return 1.0 + z * acc;
}

StabilityFunction stability_function(const ButcherTableau& t) {
  const int s = t.stages();

  if (strictly_lower_triangular(t.A)) {
    // A nilpotent: det(I - zA) = 1 and (I - zA)^{-1} = sum_k z^k A^k
    // terminates, so R is the exact polynomial 1 + sum_k z^{k+1} b^T A^k 1.
    std::vector<double> num(static_cast<size_t>(s) + 1, 0.0);
    num[0] = 1.0;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(s);
    for (int k = 0; k < s; ++k) {
      num[static_cast<size_t>(k) + 1] = t.b.dot(v);
      v = t.A * v;
    }
    return {RationalFunction(Polynomial(num), Polynomial{1.0}), t.name};
  }

  // Chebyshev sample points in [-1/2, 1/2]; both determinants have degree
  // <= s, so s+1 samples pin them down.
  const int npts = s + 1;
  Eigen::VectorXd xs(npts), fden(npts), fnum(npts);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(s, s);
  const Eigen::MatrixXd rank1 = Eigen::VectorXd::Ones(s) * t.b.transpose();
  for (int j = 0; j < npts; ++j) {
    xs(j) = 0.5 * std::cos(M_PI * j / s);
    const Eigen::MatrixXd mden = identity - xs(j) * t.A;
    fden(j) = mden.determinant();
    fnum(j) = (mden + xs(j) * rank1).determinant();
  }

  Polynomial den = fit_polynomial(xs, fden);
  Polynomial num = fit_polynomial(xs, fnum);
  const double d0 = den.coeff(0);  // det(I) = 1 up to fit roundoff
  den = (1.0 / d0) * den;
  num = (1.0 / d0) * num;
  return {RationalFunction(std::move(num), std::move(den)), t.name};
}

Polynomial pc_stability_polynomial(const PCScheme& scheme) {
  validate(scheme);
  const ButcherTableau& t = scheme.corrector;
  std::vector<double> coeffs(static_cast<size_t>(scheme.corrections) + 2, 0.0);
  coeffs[0] = 1.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(t.stages());
  for (int n = 0; n <= scheme.corrections; ++n) {
    coeffs[static_cast<size_t>(n) + 1] = t.b.dot(v);
    v = t.A * v;
  }
  return Polynomial(std::move(coeffs));
}

PowerSeries corrector_taylor_coefficients(const ButcherTableau& t, int order) {
  if (order < 0)
    throw std::invalid_argument("corrector_taylor_coefficients: order must be >= 0");
  std::vector<double> coeffs(static_cast<size_t>(order) + 1, 0.0);
  coeffs[0] = 1.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(t.stages());
  for (int n = 1; n <= order; ++n) {
    coeffs[static_cast<size_t>(n)] = t.b.dot(v);
    v = t.A * v;
  }
  return PowerSeries(std::move(coeffs));
}

TaylorTruncationReport verify_taylor_truncation(const ButcherTableau& t, int m_max) {
  if (m_max < 0)
    throw std::invalid_argument("verify_taylor_truncation: m_max must be >= 0");
  const StabilityFunction sf = stability_function(t);

  TaylorTruncationReport report;
  report.source = t.name;
  report.tolerance = tol::coeff_rel;
  for (int m = 0; m <= m_max; ++m) {
    const Polynomial lhs = pc_stability_polynomial({t, m});
    const PowerSeries rhs = series_div(sf.rational.num, sf.rational.den, m + 1);
    double worst = 0.0;
    for (int k = 0; k <= m + 1; ++k)
      worst = std::max(worst, std::abs(lhs.coeff(k) - rhs.coeffs[static_cast<size_t>(k)]));
    report.checks.push_back({m, worst});
    report.max_discrepancy = std::max(report.max_discrepancy, worst);
  }
  report.passed = report.max_discrepancy <= report.tolerance;
  return report;
}

CorrectorPoles poles_and_radius(const ButcherTableau& t) {
  const StabilityFunction sf = stability_function(t);
  if (sf.rational.den.degree() < 1)
    return {{}, std::numeric_limits<double>::infinity()};
  CorrectorPoles out;
  out.poles = poly_roots(sf.rational.den);
  out.radius = std::numeric_limits<double>::infinity();
  for (Complex pole : out.poles) out.radius = std::min(out.radius, std::abs(pole));
  return out;
}

PowerSeries general_predictor_series(const Eigen::MatrixXd& predictor,
                                     const ButcherTableau& corrector, int corrections,
                                     int order) {
  validate(corrector);
  const int s = corrector.stages();
  if (predictor.rows() != s || predictor.cols() != s)
    throw std::invalid_argument("general_predictor_series: predictor must be s x s");
  if (!strictly_lower_triangular(predictor))
    throw std::invalid_argument(
        "general_predictor_series: predictor must be strictly lower triangular");
  if (corrections < 0 || order < 0)
    throw std::invalid_argument("general_predictor_series: corrections and order must be >= 0");

  // Stage values as truncated series in z: v[k] holds the order-k coefficient
  // vector. The explicit predictor gives (I - zP)^{-1} 1 = sum_k z^k P^k 1,
  // exact because P is nilpotent.
  std::vector<Eigen::VectorXd> v(static_cast<size_t>(order) + 1,
                                 Eigen::VectorXd::Zero(s));
  Eigen::VectorXd u = Eigen::VectorXd::Ones(s);
  v[0] = u;
  for (int k = 1; k <= order; ++k) {
    u = predictor * u;
    v[static_cast<size_t>(k)] = u;
  }
  for (int sweep = 0; sweep < corrections; ++sweep) {
    std::vector<Eigen::VectorXd> next(static_cast<size_t>(order) + 1,
                                      Eigen::VectorXd::Zero(s));
    next[0] = Eigen::VectorXd::Ones(s);
    for (int k = 1; k <= order; ++k)
      next[static_cast<size_t>(k)] = corrector.A * v[static_cast<size_t>(k) - 1];
    v = std::move(next);
  }

  std::vector<double> out(static_cast<size_t>(order) + 1, 0.0);
  out[0] = 1.0;
  for (int k = 1; k <= order; ++k)
    out[static_cast<size_t>(k)] = corrector.b.dot(v[static_cast<size_t>(k) - 1]);
  return PowerSeries(std::move(out));
}

}  // namespace rkstab
