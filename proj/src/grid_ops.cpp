#include "radeuler/grid_ops.hpp"

#include <algorithm>
#include <cmath>

#include "radeuler/errors.hpp"
#include "radeuler/quadrature.hpp"

namespace radeuler {

namespace {

const GaussRule& cell_rule() {
  static const GaussRule rule = gauss_legendre(8);
  return rule;
}

}  // namespace

std::vector<double> radial_weights(const RadialGrid& grid, double l) {
  return radial_weights(grid, l, grid.a(), grid.b());
}

std::vector<double> radial_weights(const RadialGrid& grid, double l, double lo, double hi) {
  std::vector<double> w(grid.nodes(), 0.0);
  lo = std::max(lo, grid.a());
  hi = std::min(hi, grid.b());
  if (!(hi > lo)) return w;
  const GaussRule& g = cell_rule();
  const double h = grid.h();
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    const double r0 = grid.r(i);
    const double r1 = grid.r(i + 1);
    const double c0 = std::max(r0, lo);
    const double c1 = std::min(r1, hi);
    if (!(c1 > c0)) continue;
    const double mid = 0.5 * (c0 + c1);
    const double half = 0.5 * (c1 - c0);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double r = mid + half * g.nodes[k];
      const double wr = half * g.weights[k] * std::pow(r, l);
      const double s = (r - r0) / h;
      w[i] += wr * (1.0 - s);
      w[i + 1] += wr * s;
    }
  }
  return w;
}

double integrate_nodal(std::span<const double> weights, std::span<const double> f) {
  if (weights.size() != f.size()) throw DomainError("integrate_nodal: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += weights[i] * f[i];
  return acc;
}

std::vector<double> nodal_derivative(const RadialGrid& grid, std::span<const double> f) {
  const std::size_t n = f.size();
  if (n != grid.nodes()) throw DomainError("nodal_derivative: size mismatch");
  std::vector<double> d(n);
  const double h = grid.h();
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  if (n >= 3) {
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  } else {
    d[0] = d[n - 1] = (f[n - 1] - f[0]) / h;
  }
  return d;
}

double interpolate_zero_extended(const RadialGrid& grid, std::span<const double> f, double r) {
  if (r < grid.a() || r > grid.b()) return 0.0;
  const double x = (r - grid.a()) / grid.h();
  std::size_t i = static_cast<std::size_t>(std::floor(x));
  if (i >= grid.cells()) i = grid.cells() - 1;
  const double s = x - static_cast<double>(i);
  return (1.0 - s) * f[i] + s * f[i + 1];
}

}  // namespace radeuler
