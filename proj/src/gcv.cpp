#include "adaptik/gcv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "adaptik/errors.hpp"
#include "adaptik/matrix.hpp"
#include "adaptik/simd/vec_ops.hpp"

namespace adaptik {

namespace {

void check_inputs(const SvdFactors& f, std::span<const double> g, double alpha) {
  if (!(std::isfinite(alpha)) || alpha <= 0.0) {
    throw DomainError("gcv: alpha must be positive and finite");
  }
  if (g.size() != f.u.rows()) {
    throw DomainError("gcv: data length does not match factor rows");
  }
}

}  // namespace

double gcv_score(const SvdFactors& f, std::span<const double> g, double alpha) {
  check_inputs(f, g, alpha);
  const std::size_t m = f.u.rows();
  const std::size_t r = numerical_rank(f);
  const auto& ops = simd::active_ops();

  // The trace m - sum(phi) and the out-of-span energy ||g||^2 - ||U^T g||^2
  // are both small differences of large numbers when alpha << sigma_min^2,
  // and the rounding they pick up dominates the score exactly where the
  // score is smallest. Accumulate the complements directly instead: the
  // trace as (m - r) + sum(shrink) with shrink = alpha/(sigma^2 + alpha),
  // and the out-of-span energy as the squared norm of g deflated by its
  // projection onto the kept left singular vectors.
  std::vector<double> resid(g.begin(), g.end());
  double trace = static_cast<double>(m - r);
  double fit = 0.0;  // sum over reliable directions
  for (std::size_t i = 0; i < r; ++i) {
    const double s2 = f.sigma[i] * f.sigma[i];
    const double shrink = alpha / (s2 + alpha);
    const auto col = f.u.col_span(i);
    const double bi = dot(col, g);
    trace += shrink;
    fit += shrink * shrink * bi * bi;
    ops.axpy(-bi, col.data(), resid.data(), m);
  }
  const double ortho = dot(resid, resid);

  if (trace <= static_cast<double>(m) * 1e-15) {
    throw TraceError("gcv: trace denominator underflowed working precision");
  }
  return (fit + ortho) / (trace * trace);
}

double effective_dof(const SvdFactors& f, double alpha) {
  if (!(std::isfinite(alpha)) || alpha <= 0.0) {
    throw DomainError("effective_dof: alpha must be positive and finite");
  }
  double dof = 0.0;
  const std::size_t r = numerical_rank(f);
  for (std::size_t i = 0; i < r; ++i) {
    const double s2 = f.sigma[i] * f.sigma[i];
    dof += s2 / (s2 + alpha);
  }
  return dof;
}

const char* alpha_flag_name(AlphaResult::Flag flag) {
  switch (flag) {
    case AlphaResult::Flag::Interior: return "interior";
    case AlphaResult::Flag::Edge: return "edge";
    case AlphaResult::Flag::Flat: return "flat";
  }
  return "unknown";
}

namespace {

constexpr int kScanPoints = 40;
constexpr double kGoldenRelTol = 1e-3;
constexpr double kTieRel = 1e-12;

// Bounds for the tie band: scores within one standard error of the minimum
// count as ties. The GCV curve on exponential kernels is routinely flat to
// 10-20% over many decades of alpha while the solutions at the two ends
// differ by orders of magnitude; the score itself is a noisy statistic whose
// numerator spreads like a chi-square with (m - dof) degrees of freedom, so
// relative differences below ~sqrt(2/(m - dof)) are indistinguishable and
// the most-regularized alpha among them is the defensible pick -- the usual
// one-standard-error rule for cross-validated parameters.
constexpr double kTieBandMin = 0.05;
constexpr double kTieBandMax = 0.25;

// Prefer the lower score; on a tie within kTieRel relative, the larger alpha.
bool improves(double score, double alpha, double best_score, double best_alpha) {
  const double scale = std::max(std::abs(score), std::abs(best_score));
  if (std::abs(score - best_score) <= kTieRel * scale) {
    return alpha > best_alpha;
  }
  return score < best_score;
}

}  // namespace

AlphaResult minimize_alpha(const SvdFactors& f, std::span<const double> g) {
  if (f.p() == 0 || f.sigma[0] <= 0.0) {
    throw DomainError("minimize_alpha: factorization has no positive singular values");
  }
  const double s1 = f.sigma[0];
  const double s_small = f.sigma[numerical_rank(f) - 1];
  const double lo = 1e-6 * s_small * s_small;
  const double hi = 1e2 * s1 * s1;

  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);

  std::vector<std::pair<double, double>> evals;  // (log alpha, score)
  evals.reserve(kScanPoints + 64);
  auto eval = [&](double lx) {
    const double sx = gcv_score(f, g, std::exp(lx));
    evals.emplace_back(lx, sx);
    return sx;
  };

  std::vector<double> logs(kScanPoints);
  std::vector<double> scores(kScanPoints);
  int arg = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    logs[i] = log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                           static_cast<double>(kScanPoints - 1);
    scores[i] = eval(logs[i]);
    if (i > 0 && improves(scores[i], std::exp(logs[i]), scores[arg], std::exp(logs[arg]))) {
      arg = i;
    }
  }

  const auto [min_it, max_it] = std::minmax_element(scores.begin(), scores.end());
  const double spread = *max_it - *min_it;
  if (spread <= kTieRel * std::max(std::abs(*max_it), std::abs(*min_it))) {
    AlphaResult r;
    r.alpha = std::exp(0.5 * (log_lo + log_hi));
    r.score = gcv_score(f, g, r.alpha);
    r.flag = AlphaResult::Flag::Flat;
    return r;
  }

  double best_score = scores[arg];
  if (arg > 0 && arg < kScanPoints - 1) {
    // Golden-section refinement on log alpha inside the bracketing cell.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = logs[arg - 1];
    double b = logs[arg + 1];
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    best_score = std::min(best_score, std::min(f1, f2));

    while (b - a > kGoldenRelTol) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = eval(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = eval(x2);
      }
      best_score = std::min(best_score, std::min(f1, f2));
    }
  }

  // Tie band: of every evaluated alpha whose score is statistically
  // indistinguishable from the minimum, keep the largest, then push it to
  // the band's right boundary by bisection so the returned alpha is sharp
  // to the same log tolerance as the golden section.
  double pick_log = -std::numeric_limits<double>::infinity();
  double pick_score = best_score;
  for (const auto& [lx, sx] : evals) {
    if (sx <= best_score && lx > pick_log) {
      pick_log = lx;
      pick_score = sx;
    }
  }
  const double trace_at_min =
      static_cast<double>(f.u.rows()) - effective_dof(f, std::exp(pick_log));
  const double band = std::clamp(std::sqrt(2.0 / std::max(1.0, trace_at_min)),
                                 kTieBandMin, kTieBandMax);
  const double threshold = best_score * (1.0 + band);
  double above_log = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [lx, sx] : evals) {
    if (sx <= threshold && lx > pick_log) {
      pick_log = lx;
      pick_score = sx;
    }
  }
  for (const auto& [lx, sx] : evals) {
    if (lx > pick_log && (!(above_log > pick_log) || lx < above_log)) {
      above_log = lx;
    }
  }
  if (above_log > pick_log) {
    double lb = pick_log;
    double ub = above_log;
    while (ub - lb > kGoldenRelTol) {
      const double mid = 0.5 * (lb + ub);
      const double smid = gcv_score(f, g, std::exp(mid));
      if (smid <= threshold) {
        lb = mid;
        pick_score = smid;
      } else {
        ub = mid;
      }
    }
    pick_log = lb;
  }

  AlphaResult r;
  r.alpha = std::exp(pick_log);
  r.score = pick_score;
  const bool at_edge = std::abs(pick_log - log_lo) <= 1e-12 * std::max(1.0, std::abs(log_lo)) ||
                       std::abs(pick_log - log_hi) <= 1e-12 * std::max(1.0, std::abs(log_hi));
  r.flag = at_edge ? AlphaResult::Flag::Edge : AlphaResult::Flag::Interior;
  return r;
}

}  // namespace adaptik
