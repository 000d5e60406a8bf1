#include "adaptik/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "adaptik/errors.hpp"
#include "adaptik/simd/vec_ops.hpp"

namespace adaptik {
namespace {

constexpr int kMaxSweeps = 60;

// One-sided Jacobi on a tall (rows >= cols) matrix: orthogonalize column
// pairs until every pair satisfies |a_i . a_j| <= tol ||a_i|| ||a_j||, then
// read sigma off the column norms. The threshold is relative, so severely
// graded spectra (tiny columns next to large ones) terminate cleanly.
struct JacobiResult {
  Matrix work;  // A V
  Matrix v;
};

JacobiResult one_sided_jacobi(const Matrix& a) {
  const auto& ops = simd::active_ops();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const double tol =
      std::numeric_limits<double>::epsilon() * std::max<double>(16.0, static_cast<double>(rows));

  JacobiResult res{a, Matrix::identity(cols)};
  Matrix& w = res.work;
  Matrix& v = res.v;

  Vector norm2(cols);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t i = 0; i < cols; ++i) norm2[i] = ops.dot(w.col(i), w.col(i), rows);

    std::size_t rotations = 0;
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        const double alpha = norm2[i];
        const double beta = norm2[j];
        const double scale = std::sqrt(alpha) * std::sqrt(beta);
        if (scale == 0.0) continue;
        const double gamma = ops.dot(w.col(i), w.col(j), rows);
        if (std::abs(gamma) <= tol * scale) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        ops.rotate_pair(w.col(i), w.col(j), rows, c, s);
        ops.rotate_pair(v.col(i), v.col(j), cols, c, s);
        norm2[i] = c * c * alpha - 2.0 * c * s * gamma + s * s * beta;
        norm2[j] = s * s * alpha + 2.0 * c * s * gamma + c * c * beta;
        ++rotations;
      }
    }
    if (rotations == 0) return res;
  }
  throw ConvergenceError("svd: Jacobi sweep cap exceeded");
}

// Fills column k of u with a unit vector orthogonal to columns [0, k) of u.
// Only reached when sigma[k] is exactly zero (rank-deficient input).
void complete_column(Matrix& u, std::size_t k) {
  const auto& ops = simd::active_ops();
  const std::size_t rows = u.rows();
  for (std::size_t basis = 0; basis < rows; ++basis) {
    Vector cand(rows, 0.0);
    cand[basis] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < k; ++j)
        ops.axpy(-ops.dot(u.col(j), cand.data(), rows), u.col(j), cand.data(), rows);
    const double nrm = std::sqrt(ops.dot(cand.data(), cand.data(), rows));
    if (nrm > 0.5) {
      for (std::size_t r = 0; r < rows; ++r) u(r, k) = cand[r] / nrm;
      return;
    }
  }
  throw ConvergenceError("svd: failed to complete orthonormal basis");
}

// SVD of a tall matrix (rows >= cols): p = cols.
void svd_tall(const Matrix& a, Matrix& u, Vector& sigma, Matrix& v) {
  const auto& ops = simd::active_ops();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();

  JacobiResult jr = one_sided_jacobi(a);

  // Sort by descending norm; stable so equal singular values keep column order.
  Vector norms(cols);
  for (std::size_t i = 0; i < cols; ++i)
    norms[i] = std::sqrt(ops.dot(jr.work.col(i), jr.work.col(i), rows));
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  u = Matrix(rows, cols);
  v = Matrix(cols, cols);
  sigma.resize(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    const std::size_t src = order[k];
    sigma[k] = norms[src];
    for (std::size_t r = 0; r < cols; ++r) v(r, k) = jr.v(r, src);
    if (sigma[k] > 0.0) {
      for (std::size_t r = 0; r < rows; ++r) u(r, k) = jr.work(r, src) / sigma[k];
    } else {
      complete_column(u, k);
    }
  }
}

void fix_signs(Matrix& u, Matrix& v) {
  for (std::size_t k = 0; k < v.cols(); ++k) {
    double lead = 0.0;
    for (std::size_t r = 0; r < v.rows(); ++r) {
      if (v(r, k) != 0.0) {
        lead = v(r, k);
        break;
      }
    }
    if (lead < 0.0) {
      for (std::size_t r = 0; r < v.rows(); ++r) v(r, k) = -v(r, k);
      for (std::size_t r = 0; r < u.rows(); ++r) u(r, k) = -u(r, k);
    }
  }
}

}  // namespace

std::size_t numerical_rank(const SvdFactors& f) {
  if (f.p() == 0 || !(f.sigma[0] > 0.0)) return 0;
  const double floor = 1e-14 * f.sigma[0];
  std::size_t r = 0;
  while (r < f.p() && f.sigma[r] > floor) ++r;
  return r;
}

SvdFactors svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw DomainError("svd: empty matrix");
  for (double x : a.data())
    if (!std::isfinite(x)) throw DomainError("svd: non-finite entries");

  SvdFactors f;
  if (a.rows() >= a.cols()) {
    svd_tall(a, f.u, f.sigma, f.v);
  } else {
    // A = (A^T)^T: factor the transpose and swap the roles of U and V.
    svd_tall(a.transposed(), f.v, f.sigma, f.u);
  }
  fix_signs(f.u, f.v);
  return f;
}

Vector tsvd_solve(const SvdFactors& f, std::span<const double> g, std::size_t k) {
  if (g.size() != f.u.rows()) throw DomainError("tsvd_solve: size mismatch");
  if (k < 1 || k > f.p()) throw DomainError("tsvd_solve: k out of range");
  if (!(f.sigma[k - 1] > 0.0))
    throw DomainError("tsvd_solve: k exceeds the number of nonzero singular values");

  const auto& ops = simd::active_ops();
  Vector x(f.v.rows(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double beta = ops.dot(f.u.col(i), g.data(), g.size());
    ops.axpy(beta / f.sigma[i], f.v.col(i), x.data(), x.size());
  }
  return x;
}

Vector tikhonov_solve(const SvdFactors& f, std::span<const double> g, double alpha) {
  if (g.size() != f.u.rows()) throw DomainError("tikhonov_solve: size mismatch");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("tikhonov_solve: alpha must be positive and finite");

  const auto& ops = simd::active_ops();
  Vector x(f.v.rows(), 0.0);
  const std::size_t r = numerical_rank(f);
  for (std::size_t i = 0; i < r; ++i) {
    const double s = f.sigma[i];
    const double beta = ops.dot(f.u.col(i), g.data(), g.size());
    ops.axpy(s / (s * s + alpha) * beta, f.v.col(i), x.data(), x.size());
  }
  return x;
}

}  // namespace adaptik
