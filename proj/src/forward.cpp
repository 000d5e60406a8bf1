#include "adaptik/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "adaptik/errors.hpp"

namespace adaptik {

double integrate_log_trap(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw DomainError("integrate_log_trap: need 0 < lo < hi finite");
  }
  const double u_lo = std::log(lo);
  const double u_hi = std::log(hi);
  // substitute t = e^u: integral of f(e^u) e^u du
  auto ft = [&](double u) {
    const double t = std::exp(u);
    return f(t) * t;
  };

  std::size_t intervals = 64;
  double h = (u_hi - u_lo) / static_cast<double>(intervals);
  double sum = 0.5 * (ft(u_lo) + ft(u_hi));
  for (std::size_t i = 1; i < intervals; ++i) {
    sum += ft(u_lo + h * static_cast<double>(i));
  }
  double prev = sum * h;

  constexpr std::size_t kCap = 1u << 16;
  while (intervals < kCap) {
    // refine by adding midpoints of the current intervals
    for (std::size_t i = 0; i < intervals; ++i) {
      sum += ft(u_lo + h * (static_cast<double>(i) + 0.5));
    }
    intervals *= 2;
    h *= 0.5;
    const double cur = sum * h;
    if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) {
      return cur;
    }
    prev = cur;
  }
  throw ConvergenceError("integrate_log_trap: no convergence at 2^16 intervals");
}

Vector forward_transform(const MixtureSpec& spec, KernelKind kind,
                         std::span<const double> s_points) {
  spec.validate();
  for (double s : s_points) {
    if (!std::isfinite(s) || s < 0.0) {
      throw DomainError("forward_transform: s points must be finite and >= 0");
    }
  }

  // Union of the per-component +-8 sigma intervals in log t (sigma = S^-1/2),
  // which carries all mass up to ~1e-15 per component.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const MixtureComponent& c : spec.components) {
    const double half_width = 8.0 / std::sqrt(c.s_param);
    lo = std::min(lo, c.theta * std::exp(-half_width));
    hi = std::max(hi, c.theta * std::exp(half_width));
  }

  Vector g(s_points.size());
  for (std::size_t j = 0; j < s_points.size(); ++j) {
    const double s = s_points[j];
    g[j] = integrate_log_trap(
        [&](double t) { return kernel_value(kind, s, t) * mixture_density(spec, t); },
        lo, hi, 1e-8);
  }
  return g;
}

double figure1_density(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("figure1_density: t must be positive");
  }
  return std::exp(-1.0 / (8.0 * t)) /
         (2.0 * t * std::sqrt(2.0 * std::numbers::pi * t));
}

double figure1_image(double s) {
  if (s < 0.0 || !std::isfinite(s)) {
    throw DomainError("figure1_image: s must be nonnegative");
  }
  return std::exp(-std::sqrt(0.5 * s));
}

Figure1Pair figure1_pair() { return {&figure1_density, &figure1_image}; }

}  // namespace adaptik
