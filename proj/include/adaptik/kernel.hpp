#pragma once

#include <string>

#include "adaptik/grid.hpp"
#include "adaptik/matrix.hpp"

namespace adaptik {

/// The two exponential kernel families.
enum class KernelKind {
  LaplaceExp,  ///< k(s, t) = exp(-s*t)   (Laplace transform)
  InverseExp,  ///< k(s, t) = exp(-s/t)   (relaxation-rate form)
};

const char* kernel_name(KernelKind kind);
KernelKind parse_kernel_name(const std::string& name);  // throws ParseError

/// Pointwise kernel evaluation, k(s, t) for the given family.
double kernel_value(KernelKind kind, double s, double t);

/// Discretized integral operator: entries[j][i] = k(s_j, t_i) * w_i, so that
/// (K f)[j] is the grid quadrature of k(s_j, .) * f.
struct KernelMatrix {
  Matrix entries;  ///< m x n, m = s_points.size(), n = grid.n
  Grid grid;
  KernelKind kind = KernelKind::LaplaceExp;
  Vector s_points;

  std::size_t rows() const { return entries.rows(); }
  std::size_t cols() const { return entries.cols(); }
};

/// Assembles the kernel matrix. s_points must be non-empty, finite,
/// nonnegative, and sorted non-decreasing; throws DomainError otherwise.
KernelMatrix assemble_kernel(const Grid& grid, KernelKind kind,
                             std::span<const double> s_points);

}  // namespace adaptik
