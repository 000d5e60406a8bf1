#include "adaptik/solve.hpp"

#include <cmath>

#include "adaptik/errors.hpp"

namespace adaptik {

namespace {

Vector subtract(const Vector& a, std::span<const double> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

PreparedSystem prepare_system(const SampledData& data, KernelKind kind,
                              StabilizerKind stab, std::size_t n,
                              double t_min, double t_max) {
  data.validate();

  PreparedSystem sys;
  sys.kind = kind;
  sys.stabilizer = stab;
  sys.grid = build_grid(n, t_min, t_max);
  sys.k = assemble_kernel(sys.grid, kind, data.s_points).entries;
  sys.g = data.g;

  if (!data.sigma_points.empty()) {
    for (std::size_t j = 0; j < sys.k.rows(); ++j) {
      const double inv = 1.0 / data.sigma_points[j];
      sys.g[j] *= inv;
      for (std::size_t i = 0; i < sys.k.cols(); ++i) sys.k(j, i) *= inv;
    }
  }

  if (stab == StabilizerKind::SecondDerivLog) {
    Stabilizer l2 = build_l2(sys.grid);
    sys.map.emplace(to_standard_form(sys.k, l2));
    sys.factors = svd(sys.map->transformed_matrix());
    sys.rhs = sys.map->reduce_data(sys.g);
  } else {
    sys.factors = svd(sys.k);
    sys.rhs = sys.g;
  }
  return sys;
}

RegularizedSolution solve_prepared(const PreparedSystem& sys,
                                   std::optional<double> alpha) {
  RegularizedSolution sol;
  sol.grid = sys.grid;
  sol.stabilizer = sys.stabilizer;

  if (alpha.has_value()) {
    if (!std::isfinite(*alpha) || *alpha <= 0.0) {
      throw DomainError("solve: alpha must be positive and finite");
    }
    sol.alpha = *alpha;
    sol.alpha_flag = AlphaResult::Flag::Interior;
  } else {
    const AlphaResult r = minimize_alpha(sys.factors, sys.rhs);
    sol.alpha = r.alpha;
    sol.alpha_flag = r.flag;
  }
  sol.gcv = gcv_score(sys.factors, sys.rhs, sol.alpha);
  sol.effective_dof = effective_dof(sys.factors, sol.alpha);

  const Vector x = tikhonov_solve(sys.factors, sys.rhs, sol.alpha);

  if (sys.map.has_value()) {
    sol.f = sys.map->back_map(x, sys.g);
    sol.seminorm = norm2(x);  // ||x|| == ||L f|| by construction
  } else {
    sol.f = x;
    sol.seminorm = norm2(x);
  }
  sol.residual_norm = norm2(subtract(sys.k.matvec(sol.f), sys.g));
  return sol;
}

RegularizedSolution solve_at(const SampledData& data, KernelKind kind,
                             StabilizerKind stab, std::size_t n, double t_min,
                             double t_max, std::optional<double> alpha) {
  return solve_prepared(prepare_system(data, kind, stab, n, t_min, t_max),
                        alpha);
}

}  // namespace adaptik
