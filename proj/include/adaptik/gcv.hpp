#pragma once

#include "adaptik/svd.hpp"

namespace adaptik {

/// Generalized cross-validation score
///
///   V(alpha) = ||(I - K K#) g||^2 / (m - sum_i s_i^2/(s_i^2+alpha))^2
///
/// evaluated from the SVD: the numerator is
/// sum_i (alpha/(s_i^2+alpha))^2 b_i^2 + ||g - U U^T g||^2 with b = U^T g,
/// and m is the row count of the factored system. Throws TraceError if the
/// trace denominator underflows working precision and DomainError on
/// alpha <= 0.
double gcv_score(const SvdFactors& f, std::span<const double> g, double alpha);

/// sum_i s_i^2/(s_i^2 + alpha) — the effective degrees of freedom.
double effective_dof(const SvdFactors& f, double alpha);

/// Outcome of the one-dimensional alpha search.
struct AlphaResult {
  enum class Flag {
    Interior,  ///< refined minimum strictly inside the bracket
    Edge,      ///< coarse-scan minimum sat on a bracket edge
    Flat,      ///< objective flat across the scan; alpha is the midpoint
  };
  double alpha = 0.0;
  double score = 0.0;
  Flag flag = Flag::Interior;
};

const char* alpha_flag_name(AlphaResult::Flag flag);

/// Minimizes gcv_score over alpha in [1e-6 s_small^2, 1e2 s_1^2], where
/// s_small is the smallest singular value above 1e-14 s_1: a 40-point
/// log-uniform scan picks the bracketing triple, then golden-section on
/// log alpha refines to 1e-3 relative. Score ties within 1e-12 relative
/// resolve toward larger alpha.
AlphaResult minimize_alpha(const SvdFactors& f, std::span<const double> g);

}  // namespace adaptik
