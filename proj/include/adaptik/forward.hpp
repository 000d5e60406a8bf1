#pragma once

#include <functional>
#include <span>

#include "adaptik/kernel.hpp"
#include "adaptik/matrix.hpp"
#include "adaptik/mixture.hpp"

namespace adaptik {

/// Integrates f over [lo, hi] by the trapezoid rule in log t, doubling the
/// interval count from 64 until two successive refinements agree to rel_tol
/// relative (cap 2^16 intervals -> ConvergenceError). The reference
/// integrator for everything that must not depend on a candidate grid.
double integrate_log_trap(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol);

/// g[j] = integral of k(s_j, t) * f(t) dt for the mixture density f,
/// computed with integrate_log_trap to 1e-8 relative on an interval wide
/// enough to hold every component's +-8 sigma support in log t.
Vector forward_transform(const MixtureSpec& spec, KernelKind kind,
                         std::span<const double> s_points);

/// The closed-form benchmark pair: a unit-mass density whose Laplace image
/// is elementary,
///   f(t) = exp(-1/(8t)) / (2 t sqrt(2 pi t)),   g(s) = exp(-sqrt(s/2)).
double figure1_density(double t);  // throws DomainError on t <= 0
double figure1_image(double s);    // throws DomainError on s < 0

struct Figure1Pair {
  double (*density)(double t);
  double (*image)(double s);
};
Figure1Pair figure1_pair();

}  // namespace adaptik
