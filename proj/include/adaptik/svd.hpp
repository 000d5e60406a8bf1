#pragma once

#include "adaptik/matrix.hpp"

namespace adaptik {

/// Thin SVD A = U diag(sigma) V^T with p = min(rows, cols) columns in U and
/// V. sigma is sorted nonincreasing; the sign of each (u_k, v_k) pair is
/// fixed so the first nonzero entry of v_k is positive, which makes results
/// byte-reproducible across runs.
struct SvdFactors {
  Matrix u;      ///< m x p, orthonormal columns
  Vector sigma;  ///< length p, nonincreasing, >= 0
  Matrix v;      ///< n x p, orthonormal columns

  std::size_t p() const { return sigma.size(); }
};

/// One-sided Jacobi SVD. Throws ConvergenceError if the sweep cap is hit
/// (no partially valid factors are ever returned) and DomainError on empty
/// or non-finite input.
SvdFactors svd(const Matrix& a);

/// Number of singular values above 1e-14 * sigma[0]. Values below that are
/// smaller than the rounding noise the factorization itself commits on the
/// leading columns, so the directions carry no usable information; the
/// Tikhonov solver and the GCV score treat them as exact null-space. (If
/// they are kept, the GCV denominator m - tr collapses to ~0 together with
/// the numerator as alpha -> 0 and the score limit is the meaningless
/// beta_p^2, which routinely undercuts every honest interior minimum.)
std::size_t numerical_rank(const SvdFactors& f);

/// Truncated-SVD solve: sum of the k leading components (u_i^T g / s_i) v_i.
/// Requires 1 <= k <= p and sigma[k-1] > 0.
Vector tsvd_solve(const SvdFactors& f, std::span<const double> g, std::size_t k);

/// Tikhonov-filtered solve: sum of s_i/(s_i^2 + alpha) (u_i^T g) v_i, the
/// minimizer of ||A f - g||^2 + alpha ||f||^2. Requires alpha > 0.
Vector tikhonov_solve(const SvdFactors& f, std::span<const double> g, double alpha);

}  // namespace adaptik
