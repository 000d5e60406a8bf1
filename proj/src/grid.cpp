#include "adaptik/grid.hpp"

#include <cmath>

#include "adaptik/errors.hpp"

namespace adaptik {

double Grid::log_step() const {
  return (std::log(t_max) - std::log(t_min)) / static_cast<double>(n - 1);
}

Grid build_grid(std::size_t n, double t_min, double t_max) {
  if (n < 4) throw DomainError("build_grid: need n >= 4");
  if (!(t_min > 0.0) || !std::isfinite(t_min) || !std::isfinite(t_max))
    throw DomainError("build_grid: t_min must be positive and finite");
  if (!(t_min < t_max)) throw DomainError("build_grid: need t_min < t_max");

  Grid g;
  g.n = n;
  g.t_min = t_min;
  g.t_max = t_max;
  g.nodes.resize(n);
  g.weights.resize(n);

  const double u_lo = std::log(t_min);
  const double u_hi = std::log(t_max);
  const double h = (u_hi - u_lo) / static_cast<double>(n - 1);

  for (std::size_t i = 0; i < n; ++i) {
    // Endpoint values set exactly; interior nodes from the affine map in u.
    const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
    g.nodes[i] = std::exp(u_lo + (u_hi - u_lo) * frac);
  }
  g.nodes[0] = t_min;
  g.nodes[n - 1] = t_max;

  for (std::size_t i = 0; i < n; ++i) {
    const double c = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    g.weights[i] = c * h * g.nodes[i];
  }
  return g;
}

Vector log_spaced(double lo, double hi, std::size_t count) {
  if (count < 2) throw DomainError("log_spaced: need count >= 2");
  if (!(lo > 0.0) || !(lo <= hi) || !std::isfinite(hi)) {
    throw DomainError("log_spaced: need 0 < lo <= hi finite");
  }
  Vector v(count);
  const double u_lo = std::log(lo);
  const double u_hi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = std::exp(u_lo + (u_hi - u_lo) * frac);
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace adaptik
