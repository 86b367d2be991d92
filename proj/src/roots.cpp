#include "rkstab/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace rkstab {

namespace {

// Horner value and derivative in one pass.
std::pair<Complex, Complex> eval_with_derivative(const std::vector<double>& c, Complex z) {
  Complex v{};
  Complex d{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p) {
  if (p.is_zero())
    throw std::domain_error("poly_roots: the zero polynomial has no well-defined roots");
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("poly_roots: requires degree >= 1");

  const std::vector<double>& c = p.coeffs();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(n)];

  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()(i);

  // Newton polish, kept only while the residual shrinks.
  for (Complex& r : roots) {
    for (int iter = 0; iter < 4; ++iter) {
      const auto [v, d] = eval_with_derivative(c, r);
      if (std::abs(d) == 0.0) break;
      const Complex next = r - v / d;
      if (std::abs(p.eval(next)) < std::abs(v))
        r = next;
      else
        break;
    }
  }

  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace rkstab
