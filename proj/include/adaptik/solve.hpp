#pragma once

#include <optional>

#include "adaptik/data.hpp"
#include "adaptik/gcv.hpp"
#include "adaptik/kernel.hpp"
#include "adaptik/stabilizer.hpp"
#include "adaptik/standard_form.hpp"
#include "adaptik/svd.hpp"

namespace adaptik {

/// A regularized solution on its grid plus the diagnostics needed to judge
/// it: the data misfit, the penalized seminorm, the cross-validation score
/// at the chosen alpha, and the effective number of fitted degrees of
/// freedom. When the data carries per-point noise levels the misfit (and
/// everything downstream of it) is measured in the whitened system.
struct RegularizedSolution {
  Grid grid;
  Vector f;
  double alpha = 0.0;
  StabilizerKind stabilizer = StabilizerKind::Identity;
  double residual_norm = 0.0;  ///< ||K f - g||
  double seminorm = 0.0;       ///< ||Omega f||
  double gcv = 0.0;
  double effective_dof = 0.0;
  AlphaResult::Flag alpha_flag = AlphaResult::Flag::Interior;
};

/// Everything solve_at builds before the alpha-dependent steps: the grid,
/// the (whitened) kernel system, and the SVD of the operator in identity-
/// stabilizer coordinates. Splitting this out lets the outer discretization
/// search factor once per candidate and score many alphas against it.
struct PreparedSystem {
  Grid grid;
  KernelKind kind = KernelKind::LaplaceExp;
  StabilizerKind stabilizer = StabilizerKind::Identity;
  Matrix k;     ///< whitened kernel matrix, m x n
  Vector g;     ///< whitened data, length m
  std::optional<StandardFormMap> map;  ///< engaged iff stabilizer is L2
  SvdFactors factors;  ///< of k, or of the transformed operator
  Vector rhs;          ///< g, or the transformed data
};

PreparedSystem prepare_system(const SampledData& data, KernelKind kind,
                              StabilizerKind stab, std::size_t n,
                              double t_min, double t_max);

/// Tikhonov solve on a prepared system. alpha = nullopt runs minimize_alpha;
/// passing the resulting alpha explicitly reproduces the same solution.
RegularizedSolution solve_prepared(const PreparedSystem& sys,
                                   std::optional<double> alpha);

/// Full pipeline: grid, kernel, optional standard-form transform, SVD,
/// alpha choice, solve, back-transform.
RegularizedSolution solve_at(const SampledData& data, KernelKind kind,
                             StabilizerKind stab, std::size_t n, double t_min,
                             double t_max,
                             std::optional<double> alpha = std::nullopt);

}  // namespace adaptik
