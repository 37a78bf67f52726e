#ifndef RADEULER_TESTS_MANUFACTURED_HPP
#define RADEULER_TESTS_MANUFACTURED_HPP

#include <cmath>
#include <numbers>

#include "radeuler/model.hpp"

namespace radeuler::testing {

// Manufactured fields rho = 1 + 0.1 sin(pi x), m = 0.3 sin(2 pi x), x = (r - a)/L, and the
// right-hand side of the viscous system differentiated by hand.
struct Manufactured {
  double a, b, eps;
  GasModel model;
  double L() const { return b - a; }
  double x(double r) const { return (r - a) / L(); }
  double rho(double r) const { return 1.0 + 0.1 * std::sin(std::numbers::pi * x(r)); }
  double rho1(double r) const { return 0.1 * std::numbers::pi / L() * std::cos(std::numbers::pi * x(r)); }
  double rho2(double r) const { return -0.1 * std::numbers::pi * std::numbers::pi / (L() * L()) * std::sin(std::numbers::pi * x(r)); }
  double m(double r) const { return 0.3 * std::sin(2.0 * std::numbers::pi * x(r)); }
  double m1(double r) const { return 0.6 * std::numbers::pi / L() * std::cos(2.0 * std::numbers::pi * x(r)); }
  double m2(double r) const { return -1.2 * std::numbers::pi * std::numbers::pi / (L() * L()) * std::sin(2.0 * std::numbers::pi * x(r)); }
  double drho(double r) const {
    const double e = model.n_dim() - 1.0;
    return -m1(r) - e / r * m(r) + eps * (rho2(r) + e / r * rho1(r));
  }
  double dm(double r) const {
    const double e = model.n_dim() - 1.0;
    const double R = rho(r), M = m(r), R1 = rho1(r), M1 = m1(r);
    const double g = model.gamma(), k = model.kappa(), d = model.delta();
    const double flux_r = 2.0 * M * M1 / R - M * M * R1 / (R * R) + (k * g * std::pow(R, g - 1.0) + 2.0 * d * R) * R1;
    return -flux_r - e / r * M * M / R + eps * (m2(r) + e / r * M1 - e / (r * r) * M);
  }
};

}  // namespace radeuler::testing

#endif  // RADEULER_TESTS_MANUFACTURED_HPP
