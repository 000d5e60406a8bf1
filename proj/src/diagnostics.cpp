#include "adaptik/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "adaptik/errors.hpp"

namespace adaptik {

namespace {

constexpr std::size_t kReferencePoints = 200;

// Linear interpolation in log t over the solution's own grid. Queries are
// clamped to the grid span; they only leave it by rounding, since the
// reference grid lives inside the span intersection.
double interp_log_t(const Grid& grid, const Vector& f, double t) {
  const double u = std::log(t);
  const double u_lo = std::log(grid.t_min);
  const double u_hi = std::log(grid.t_max);
  if (u <= u_lo) return f.front();
  if (u >= u_hi) return f.back();
  const double h = grid.log_step();
  const double pos = (u - u_lo) / h;
  std::size_t k = static_cast<std::size_t>(pos);
  k = std::min(k, grid.n - 2);
  const double w = pos - static_cast<double>(k);
  return (1.0 - w) * f[k] + w * f[k + 1];
}

}  // namespace

DisagreementReport disagreement(const RegularizedSolution& sol_identity,
                                const RegularizedSolution& sol_l2,
                                double threshold_frac) {
  if (!(threshold_frac > 0.0) || !(threshold_frac < 1.0)) {
    throw DomainError("disagreement: threshold_frac must lie in (0, 1)");
  }
  const double lo = std::max(sol_identity.grid.t_min, sol_l2.grid.t_min);
  const double hi = std::min(sol_identity.grid.t_max, sol_l2.grid.t_max);
  if (!(lo < hi)) {
    throw DomainError("disagreement: solution intervals do not overlap");
  }

  DisagreementReport rep;
  rep.reference_grid = log_spaced(lo, hi, kReferencePoints);
  rep.f_identity.resize(kReferencePoints);
  rep.f_l2.resize(kReferencePoints);
  rep.pointwise_gap.resize(kReferencePoints);

  double scale = 0.0;
  for (std::size_t i = 0; i < kReferencePoints; ++i) {
    const double t = rep.reference_grid[i];
    rep.f_identity[i] = interp_log_t(sol_identity.grid, sol_identity.f, t);
    rep.f_l2[i] = interp_log_t(sol_l2.grid, sol_l2.f, t);
    const double gap = std::abs(rep.f_identity[i] - rep.f_l2[i]);
    rep.pointwise_gap[i] = gap;
    rep.sum_sq += gap * gap;
    scale = std::max({scale, std::abs(rep.f_identity[i]), std::abs(rep.f_l2[i])});
  }

  const double threshold = threshold_frac * scale;
  std::size_t run_start = kReferencePoints;
  for (std::size_t i = 0; i <= kReferencePoints; ++i) {
    const bool flagged = i < kReferencePoints && rep.pointwise_gap[i] > threshold;
    if (flagged && run_start == kReferencePoints) {
      run_start = i;
    } else if (!flagged && run_start != kReferencePoints) {
      rep.flagged_regions.emplace_back(rep.reference_grid[run_start],
                                       rep.reference_grid[i - 1]);
      run_start = kReferencePoints;
    }
  }
  return rep;
}

ResidualStats residual_stats(const KernelMatrix& k, std::span<const double> f,
                             std::span<const double> g) {
  if (f.size() != k.cols() || g.size() != k.rows()) {
    throw DomainError("residual_stats: dimension mismatch");
  }
  ResidualStats st;
  st.residuals = k.entries.matvec(f);
  const std::size_t m = g.size();
  for (std::size_t j = 0; j < m; ++j) {
    st.residuals[j] -= g[j];
    st.mean += st.residuals[j];
  }
  st.mean /= static_cast<double>(m);

  double ss = 0.0;
  double lag = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double d = st.residuals[j] - st.mean;
    ss += d * d;
    if (j + 1 < m) lag += d * (st.residuals[j + 1] - st.mean);
  }
  st.std = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1)) : 0.0;
  st.lag1_autocorr = ss > 0.0 ? lag / ss : 0.0;
  return st;
}

std::vector<Peak> find_peaks(std::span<const double> f, const Grid& grid,
                             double min_prominence_frac) {
  if (f.size() != grid.n) {
    throw DomainError("find_peaks: vector length does not match grid");
  }
  for (double v : f) {
    if (!std::isfinite(v)) throw DomainError("find_peaks: non-finite value");
  }

  const double f_max = *std::max_element(f.begin(), f.end());
  const double needed = min_prominence_frac * f_max;

  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (!(f[i] > f[i - 1] && f[i] > f[i + 1])) continue;

    // lowest valley on each side before anything taller than the peak
    double left_min = f[i];
    for (std::size_t j = i; j-- > 0;) {
      if (f[j] > f[i]) break;
      left_min = std::min(left_min, f[j]);
    }
    double right_min = f[i];
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (f[j] > f[i]) break;
      right_min = std::min(right_min, f[j]);
    }
    const double prominence = f[i] - std::max(left_min, right_min);
    if (prominence >= needed) {
      peaks.push_back({grid.nodes[i], f[i]});
    }
  }
  return peaks;
}

}  // namespace adaptik
