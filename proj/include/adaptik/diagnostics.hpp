#pragma once

#include <utility>
#include <vector>

#include "adaptik/kernel.hpp"
#include "adaptik/solve.hpp"

namespace adaptik {

/// Two solutions of the same data under different stabilizers, compared on
/// a common reference grid. Where they disagree, neither is trustworthy;
/// flagged_regions lists the t-intervals where the pointwise gap exceeds
/// threshold_frac times the larger solution magnitude.
struct DisagreementReport {
  Vector reference_grid;  ///< 200 log-uniform t values on the grid overlap
  Vector f_identity;
  Vector f_l2;
  Vector pointwise_gap;   ///< |f_identity - f_l2|
  double sum_sq = 0.0;    ///< sum of squared gaps over the reference grid
  std::vector<std::pair<double, double>> flagged_regions;
};

/// Interpolates both solutions (linear in log t) onto the reference grid
/// and measures their gap. Throws DomainError when the solution intervals
/// do not overlap or threshold_frac is outside (0, 1).
DisagreementReport disagreement(const RegularizedSolution& sol_identity,
                                const RegularizedSolution& sol_l2,
                                double threshold_frac);

struct ResidualStats {
  Vector residuals;  ///< K f - g
  double mean = 0.0;
  double std = 0.0;            ///< sample standard deviation
  double lag1_autocorr = 0.0;  ///< 0 when residuals are constant
};

ResidualStats residual_stats(const KernelMatrix& k, std::span<const double> f,
                             std::span<const double> g);

struct Peak {
  double t = 0.0;
  double height = 0.0;
};

/// Strict interior local maxima of f over the grid, keeping those whose
/// prominence (height above the higher of the two surrounding valleys,
/// measured until a taller sample is reached) is at least
/// min_prominence_frac * max(f). Sorted by t. Scaling f by a positive
/// constant scales heights but never changes which peaks are returned.
std::vector<Peak> find_peaks(std::span<const double> f, const Grid& grid,
                             double min_prominence_frac);

}  // namespace adaptik
