#pragma once

#include <cstddef>

namespace adaptik::simd {

/// Table of double-precision array kernels the numeric core is built on.
///
/// Two lanes exist: a portable scalar reference and an AVX2 variant compiled
/// when the target supports it. `active_ops()` selects one lane per process,
/// so repeated runs on the same machine take the same code path and produce
/// identical bytes. The lanes are equivalence-tested against each other.
struct VecOps {
  const char* name;

  /// x . y
  double (*dot)(const double* x, const double* y, std::size_t n);

  /// One-pass fused dots: xx = x.x, yy = y.y, xy = x.y.
  void (*dot3)(const double* x, const double* y, std::size_t n, double& xx,
               double& yy, double& xy);

  /// Plane rotation: [x, y] <- [c*x - s*y, s*x + c*y].
  void (*rotate_pair)(double* x, double* y, std::size_t n, double c, double s);

  /// y += a*x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  /// x *= a
  void (*scale)(double a, double* x, std::size_t n);

  double (*sum)(const double* x, std::size_t n);

  /// dst[i] = c * exp(a * x[i])
  void (*exp_scale)(const double* x, double* dst, std::size_t n, double a,
                    double c);
};

const VecOps& scalar_ops();

#ifdef ADAPTIK_HAVE_AVX2
const VecOps& avx2_ops();
#endif

/// True when the running CPU can execute the AVX2 lane.
bool avx2_supported();

/// Lane used by the library: AVX2 when supported, otherwise scalar. The
/// environment variable ADAPTIK_SIMD ("scalar" or "avx2") overrides; forcing
/// "avx2" on an unsupported CPU falls back to scalar.
const VecOps& active_ops();

}  // namespace adaptik::simd
