#include "adaptik/kernel.hpp"

#include <cmath>

#include "adaptik/errors.hpp"
#include "adaptik/simd/vec_ops.hpp"

namespace adaptik {

const char* kernel_name(KernelKind kind) {
  return kind == KernelKind::LaplaceExp ? "laplace" : "nmr";
}

KernelKind parse_kernel_name(const std::string& name) {
  if (name == "laplace") return KernelKind::LaplaceExp;
  if (name == "nmr") return KernelKind::InverseExp;
  throw ParseError("unknown kernel \"" + name + "\" (expected laplace or nmr)");
}

double kernel_value(KernelKind kind, double s, double t) {
  return kind == KernelKind::LaplaceExp ? std::exp(-s * t) : std::exp(-s / t);
}

KernelMatrix assemble_kernel(const Grid& grid, KernelKind kind,
                             std::span<const double> s_points) {
  if (s_points.empty()) throw DomainError("assemble_kernel: empty s grid");
  for (std::size_t j = 0; j < s_points.size(); ++j) {
    if (!std::isfinite(s_points[j]) || s_points[j] < 0.0)
      throw DomainError("assemble_kernel: s values must be finite and >= 0");
    if (j > 0 && s_points[j] < s_points[j - 1])
      throw DomainError("assemble_kernel: s values must be sorted non-decreasing");
  }

  const auto& ops = simd::active_ops();
  const std::size_t m = s_points.size();
  const std::size_t n = grid.n;

  KernelMatrix k;
  k.entries = Matrix(m, n);
  k.grid = grid;
  k.kind = kind;
  k.s_points.assign(s_points.begin(), s_points.end());

  // Fill by columns: column i is w_i * exp(-t_i * s) (or exp(-s / t_i)),
  // vectorized over the s axis.
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.nodes[i];
    const double a = kind == KernelKind::LaplaceExp ? -t : -1.0 / t;
    ops.exp_scale(k.s_points.data(), k.entries.col(i), m, a, grid.weights[i]);
  }
  return k;
}

}  // namespace adaptik
