#include "radeuler/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>

#include "radeuler/errors.hpp"

namespace radeuler {

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: order must be positive");
  if (alpha <= -1.0 || beta <= -1.0) throw DomainError("gauss_jacobi: exponents must exceed -1");

  // Recurrence coefficients of the monic Jacobi polynomials.
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd offdiag(n > 1 ? n - 1 : 1);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (beta - alpha) / (ab + 2.0);
    } else {
      diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    if (k >= 1) {
      const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
      const double den = s * s * (s + 1.0) * (s - 1.0);
      offdiag(k - 1) = std::sqrt(num / den);
    }
  }

  const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                         std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("gauss_jacobi: tridiagonal eigenproblem failed");
  }
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, unsigned max_depth) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  // Boost's tolerance is relative to the L1 norm; a coarse pass fixes the scale so the
  // relative target matches abs_tol without chasing round-off.
  boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &error, &l1);
  const double rel = l1 > 0.0 ? std::clamp(0.1 * abs_tol / l1, 1e-14, 1e-6) : 1e-14;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel, &error);
  if (!std::isfinite(value) || error > abs_tol) {
    throw NumericalError("adaptive quadrature did not reach tolerance on [" + std::to_string(a) +
                         ", " + std::to_string(b) + "], error estimate " + std::to_string(error));
  }
  return value;
}

}  // namespace radeuler
