#pragma once

#include <cstddef>

#include "adaptik/matrix.hpp"

namespace adaptik {

/// Log-uniform quadrature grid on [t_min, t_max].
///
/// Nodes are equispaced in u = log t; weights implement the composite
/// trapezoid rule in u with the Jacobian dt = t du absorbed, i.e.
/// weights[i] = c_i * h * nodes[i] with c_i = 1/2 at the endpoints and 1
/// otherwise. The rule integrates any f with f(t)*t constant in u exactly
/// (so e.g. the quadrature of 1/t over [a, b] is log(b/a) to rounding).
struct Grid {
  std::size_t n = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  Vector nodes;    ///< strictly increasing, nodes[0]=t_min, nodes[n-1]=t_max
  Vector weights;  ///< positive trapezoid-in-log weights, units of t

  /// Uniform spacing in log t.
  double log_step() const;
};

/// Builds the grid. Requires n >= 4 and 0 < t_min < t_max; throws DomainError
/// otherwise.
Grid build_grid(std::size_t n, double t_min, double t_max);

/// count values equispaced in log between lo and hi inclusive, endpoints
/// exact. Requires 0 < lo <= hi and count >= 2 (all values equal lo when
/// the range is degenerate).
Vector log_spaced(double lo, double hi, std::size_t count);

}  // namespace adaptik
