#include <cmath>
#include <numbers>

#include "doctest.h"
#include "radeuler/errors.hpp"
#include "radeuler/quadrature.hpp"

using namespace radeuler;

namespace {

// int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^(a+b+1) Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)
double jacobi_mass(double a, double b) {
  return std::pow(2.0, a + b + 1.0) * std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
}

double apply(const GaussRule& g, auto f) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * f(g.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("legendre rule integrates monomials up to degree 2n-1") {
  for (int n : {2, 5, 12}) {
    const GaussRule g = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
      CHECK(apply(g, [k](double x) { return std::pow(x, k); }) == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("jacobi rule weights sum to the weight mass") {
  for (double a : {0.0, 0.25, 1.5, 3.0}) {
    for (double b : {0.0, 0.5, 2.0}) {
      const GaussRule g = gauss_jacobi(10, a, b);
      CHECK(apply(g, [](double) { return 1.0; }) == doctest::Approx(jacobi_mass(a, b)).epsilon(1e-12));
      // first moment: int x w = mass * (b - a) / (a + b + 2)
      CHECK(apply(g, [](double x) { return x; }) ==
            doctest::Approx(jacobi_mass(a, b) * (b - a) / (a + b + 2.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("jacobi nodes are interior and ordered") {
  const GaussRule g = gauss_jacobi(16, 0.5, -0.25);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.nodes[i] > -1.0);
    CHECK(g.nodes[i] < 1.0);
    CHECK(g.weights[i] > 0.0);
    if (i) CHECK(g.nodes[i] > g.nodes[i - 1]);
  }
}

TEST_CASE("adaptive integration") {
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_adaptive([](double x) { return x * std::sqrt(x); }, 0.0, 1.0, 1e-10) ==
        doctest::Approx(0.4).epsilon(1e-9));
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 3), NumericalError);
  CHECK(integrate_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}
