#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace adaptik {

using Vector = std::vector<double>;

/// Dense column-major matrix of doubles. Column-major keeps the hot paths
/// (column dots and rotations, axpy-style matvec) contiguous.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  double* col(std::size_t c) { return data_.data() + c * rows_; }
  const double* col(std::size_t c) const { return data_.data() + c * rows_; }

  std::span<const double> col_span(std::size_t c) const {
    return {col(c), rows_};
  }

  Matrix transposed() const;

  /// y = A x
  Vector matvec(std::span<const double> x) const;
  /// y = A^T x
  Vector matvec_t(std::span<const double> x) const;
  /// C = A B
  Matrix matmul(const Matrix& b) const;

  double frobenius_norm() const;

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

/// ||x||_2, via the active SIMD lane.
double norm2(std::span<const double> x);

/// x . y
double dot(std::span<const double> x, std::span<const double> y);

}  // namespace adaptik
