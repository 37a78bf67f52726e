#ifndef RADEULER_QUADRATURE_HPP
#define RADEULER_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace radeuler {

/// Nodes and weights of an interpolatory rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1], built by
/// the Golub-Welsch eigenvalue method. Exact for polynomials of degree <= 2n-1.
GaussRule gauss_jacobi(int n, double alpha, double beta);

inline GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Throws NumericalError when the error estimate stays above abs_tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, unsigned max_depth = 30);

}  // namespace radeuler

#endif  // RADEULER_QUADRATURE_HPP
