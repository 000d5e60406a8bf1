#include "adaptik/matrix.hpp"

#include <cassert>
#include <cmath>

#include "adaptik/simd/vec_ops.hpp"

namespace adaptik {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) t(c, r) = (*this)(r, c);
  return t;
}

Vector Matrix::matvec(std::span<const double> x) const {
  assert(x.size() == cols_);
  const auto& ops = simd::active_ops();
  Vector y(rows_, 0.0);
  for (std::size_t c = 0; c < cols_; ++c)
    if (x[c] != 0.0) ops.axpy(x[c], col(c), y.data(), rows_);
  return y;
}

Vector Matrix::matvec_t(std::span<const double> x) const {
  assert(x.size() == rows_);
  const auto& ops = simd::active_ops();
  Vector y(cols_);
  for (std::size_t c = 0; c < cols_; ++c) y[c] = ops.dot(col(c), x.data(), rows_);
  return y;
}

Matrix Matrix::matmul(const Matrix& b) const {
  assert(cols_ == b.rows());
  const auto& ops = simd::active_ops();
  Matrix c(rows_, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    double* cj = c.col(j);
    for (std::size_t k = 0; k < cols_; ++k) {
      const double bkj = b(k, j);
      if (bkj != 0.0) ops.axpy(bkj, col(k), cj, rows_);
    }
  }
  return c;
}

double Matrix::frobenius_norm() const {
  const auto& ops = simd::active_ops();
  if (data_.empty()) return 0.0;
  return std::sqrt(ops.dot(data_.data(), data_.data(), data_.size()));
}

double norm2(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::sqrt(simd::active_ops().dot(x.data(), x.data(), x.size()));
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  if (x.empty()) return 0.0;
  return simd::active_ops().dot(x.data(), y.data(), x.size());
}

}  // namespace adaptik
