#include "adaptik/simd/vec_ops.hpp"

#include <cmath>

// Reference lane. Plain sequential loops; the AVX2 lane is tested against
// these.

namespace adaptik::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void dot3_scalar(const double* x, const double* y, std::size_t n, double& xx,
                 double& yy, double& xy) {
  double axx = 0.0, ayy = 0.0, axy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    axx += x[i] * x[i];
    ayy += y[i] * y[i];
    axy += x[i] * y[i];
  }
  xx = axx;
  yy = ayy;
  xy = axy;
}

void rotate_pair_scalar(double* x, double* y, std::size_t n, double c,
                        double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void exp_scale_scalar(const double* x, double* dst, std::size_t n, double a,
                      double c) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = c * std::exp(a * x[i]);
}

}  // namespace

const VecOps& scalar_ops() {
  static const VecOps ops = {
      "scalar",    dot_scalar,  dot3_scalar, rotate_pair_scalar,
      axpy_scalar, scale_scalar, sum_scalar, exp_scale_scalar,
  };
  return ops;
}

}  // namespace adaptik::simd
