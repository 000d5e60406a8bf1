#pragma once

#include "adaptik/matrix.hpp"
#include "adaptik/stabilizer.hpp"

namespace adaptik {

/// Transformation of min ||K f - g||^2 + alpha ||L f||^2 (L the second-
/// difference stabilizer, two-dimensional null space spanned by 1 and log t)
/// into identity-stabilizer form min ||Kb fb - gb||^2 + alpha ||fb||^2.
///
/// The transformed operator has m-2 rows and n-2 columns: the two data
/// components lying in the range of K restricted to null(L) are fit exactly
/// and eliminated, which is what makes the plain SVD filter-factor machinery
/// (and the cross-validation trace over the reduced row count) applicable.
///
/// Round trip, for any transformed solution fb and data g:
///   ||Kb fb - reduce_data(g)||^2 == ||K back_map(fb, g) - g||^2
///   ||fb||^2                     == ||L back_map(fb, g)||^2
class StandardFormMap {
 public:
  const Matrix& transformed_matrix() const { return k_bar_; }
  std::size_t reduced_rows() const { return k_bar_.rows(); }
  std::size_t reduced_cols() const { return k_bar_.cols(); }

  /// g (length m) -> transformed data (length m-2).
  Vector reduce_data(std::span<const double> g) const;

  /// Transformed solution (length n-2) plus the original data (length m,
  /// which fixes the unpenalized null-space component) -> solution (length n).
  Vector back_map(std::span<const double> x_bar, std::span<const double> g) const;

 private:
  friend StandardFormMap to_standard_form(const Matrix& k, const Stabilizer& l2);

  Vector apply_null_pinv(std::span<const double> rhs) const;  // L^+ via G = L L^T
  Vector qt_apply(std::span<const double> y) const;           // Q^T y from reflectors

  Matrix k_bar_;      // (m-2) x (n-2)
  Matrix k_;          // original K, m x n
  Matrix l_;          // stabilizer matrix, (n-2) x n
  Matrix chol_;       // banded Cholesky factor of L L^T
  Vector w_const_;    // null-space basis column 1 (all ones)
  Vector w_log_;      // null-space basis column log t
  Vector hv1_, hv2_;  // Householder vectors of the QR of K W
  double tau1_ = 0.0, tau2_ = 0.0;
  double r11_ = 0.0, r12_ = 0.0, r22_ = 0.0;
};

/// Builds the map. Requires a SecondDerivLog stabilizer whose grid matches
/// K's column count and m >= 3 rows; throws RankError when K restricted to
/// null(L) is numerically singular (condition above 1e12).
StandardFormMap to_standard_form(const Matrix& k, const Stabilizer& l2);

}  // namespace adaptik
