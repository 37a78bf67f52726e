#ifndef RADEULER_GRID_OPS_HPP
#define RADEULER_GRID_OPS_HPP

#include <span>
#include <vector>

#include "radeuler/model.hpp"

namespace radeuler {

/// Weights w with sum_i w_i f_i = int_a^b I(f)(r) r^l dr, where I(f) is the piecewise
/// linear interpolant of the nodal values. Exact for constants.
std::vector<double> radial_weights(const RadialGrid& grid, double l);

/// Same, restricted to [lo, hi] (clipped to [a, b]).
std::vector<double> radial_weights(const RadialGrid& grid, double l, double lo, double hi);

double integrate_nodal(std::span<const double> weights, std::span<const double> f);

/// Nodal first derivative: central in the interior, second-order one-sided at the ends.
std::vector<double> nodal_derivative(const RadialGrid& grid, std::span<const double> f);

/// Linear interpolation of nodal values at r; zero outside [a, b].
double interpolate_zero_extended(const RadialGrid& grid, std::span<const double> f, double r);

}  // namespace radeuler

#endif  // RADEULER_GRID_OPS_HPP
