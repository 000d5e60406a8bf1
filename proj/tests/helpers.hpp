#pragma once

// Shared test utilities. Everything here is deliberately independent of the
// library's own numerics: the linear solver is plain Gaussian elimination,
// the integrator is adaptive Simpson, and the RNG is a xorshift variant, so
// agreement between a library result and a helper result is evidence rather
// than tautology.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adaptik/matrix.hpp"

namespace testhelp {

// --- deterministic RNG (xorshift64*, not the library's generator) ---

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    return state * 0x2545F4914F6CDD1DULL;
  }

  /// uniform in [0, 1)
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// uniform in [-1, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }

  /// standard normal via Box-Muller
  double normal() {
    const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive bounds
    return lo + static_cast<std::size_t>(next_u64() % (hi - lo + 1));
  }
};

inline adaptik::Matrix random_matrix(Rng& rng, std::size_t m, std::size_t n) {
  adaptik::Matrix a(m, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < m; ++r) a(r, c) = rng.symmetric();
  return a;
}

inline adaptik::Vector random_vector(Rng& rng, std::size_t n) {
  adaptik::Vector v(n);
  for (double& x : v) x = rng.symmetric();
  return v;
}

// --- dense linear algebra oracles ---

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline adaptik::Vector gauss_solve(adaptik::Matrix a, adaptik::Vector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("gauss_solve: not square");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::fabs(a(r, k)) > std::fabs(a(piv, k))) piv = r;
    if (a(piv, k) == 0.0) throw std::runtime_error("gauss_solve: singular");
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      b[r] -= f * b[k];
    }
  }
  adaptik::Vector x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= a(k, c) * x[c];
    x[k] = s / a(k, k);
  }
  return x;
}

/// Minimizer of ||K f - g||^2 + alpha ||W f||^2 via the normal equations
/// (K^T K + alpha W^T W) f = K^T g. Pass an empty W for the identity.
inline adaptik::Vector tikhonov_direct(const adaptik::Matrix& k,
                                       std::span<const double> g, double alpha,
                                       const adaptik::Matrix& w = {}) {
  const std::size_t n = k.cols();
  adaptik::Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < k.rows(); ++r) s += k(r, i) * k(r, j);
      a(i, j) = s;
    }
  if (w.rows() == 0) {
    for (std::size_t i = 0; i < n; ++i) a(i, i) += alpha;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < w.rows(); ++r) s += w(r, i) * w(r, j);
        a(i, j) += alpha * s;
      }
  }
  adaptik::Vector rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < k.rows(); ++r) rhs[i] += k(r, i) * g[r];
  return gauss_solve(a, rhs);
}

/// Cross-validation score computed the long way round: form the influence
/// matrix A = K (K^T K + alpha I)^(-1) K^T explicitly and evaluate
/// ||(I - A) g||^2 / (m - trace A)^2. The trace can sit within 1e-6 of m
/// (small alpha, m <= n), so everything runs in long double to keep the
/// cancellation in the denominator far below the comparison tolerances.
inline double dense_gcv_score(const adaptik::Matrix& k,
                              std::span<const double> g, double alpha) {
  using ld = long double;
  const std::size_t m = k.rows();
  const std::size_t n = k.cols();

  // augmented [K^T K + alpha I | K^T], eliminated in place -> X = A^{-1} K^T
  const std::size_t w = n + m;
  std::vector<ld> aug(n * w, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ld s = (i == j) ? static_cast<ld>(alpha) : 0.0L;
      for (std::size_t r = 0; r < m; ++r) {
        s += static_cast<ld>(k(r, i)) * static_cast<ld>(k(r, j));
      }
      aug[i * w + j] = s;
    }
    for (std::size_t r = 0; r < m; ++r) {
      aug[i * w + n + r] = static_cast<ld>(k(r, i));
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(aug[r * w + col]) > std::abs(aug[piv * w + col])) piv = r;
    }
    if (piv != col) {
      for (std::size_t c = 0; c < w; ++c) {
        std::swap(aug[col * w + c], aug[piv * w + c]);
      }
    }
    if (aug[col * w + col] == 0.0L) {
      throw std::runtime_error("dense_gcv_score: singular normal matrix");
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const ld factor = aug[r * w + col] / aug[col * w + col];
      if (factor == 0.0L) continue;
      for (std::size_t c = col; c < w; ++c) {
        aug[r * w + c] -= factor * aug[col * w + c];
      }
    }
  }

  // influence application H y = K X y and trace H = sum_j (K X)_{jj}
  auto x_entry = [&](std::size_t i, std::size_t j) {
    return aug[i * w + n + j] / aug[i * w + i];
  };
  ld trace = 0.0L;
  ld num = 0.0L;
  for (std::size_t r = 0; r < m; ++r) {
    ld hg = 0.0L;  // (H g)_r
    ld hrr = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      ld xg = 0.0L;
      for (std::size_t j = 0; j < m; ++j) {
        xg += x_entry(i, j) * static_cast<ld>(g[j]);
      }
      hg += static_cast<ld>(k(r, i)) * xg;
      hrr += static_cast<ld>(k(r, i)) * x_entry(i, r);
    }
    const ld resid = static_cast<ld>(g[r]) - hg;
    num += resid * resid;
    trace += hrr;
  }
  const ld den = static_cast<ld>(m) - trace;
  return static_cast<double>(num / (den * den));
}

// --- integration oracle ---

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int depth = 40) {
  const double c = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fc = f(c);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
  const std::function<double(double, double, double, double, double, double,
                             double, int)>
      step = [&](double lo, double hi, double flo, double fhi, double fmid,
                 double prev, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::fabs(left + right - prev) <= 15.0 * eps)
      return left + right + (left + right - prev) / 15.0;
    return step(lo, mid, flo, fmid, flm, left, 0.5 * eps, d - 1) +
           step(mid, hi, fmid, fhi, frm, right, 0.5 * eps, d - 1);
  };
  return step(a, b, fa, fb, fc, whole, tol, depth);
}

/// Simpson oracle for integrals over positive t, evaluated in u = log t.
inline double simpson_log(const std::function<double(double)>& f, double t_lo,
                          double t_hi, double tol) {
  return adaptive_simpson(
      [&](double u) {
        const double t = std::exp(u);
        return f(t) * t;
      },
      std::log(t_lo), std::log(t_hi), tol);
}

// --- small numeric helpers ---

inline double rel_err(std::span<const double> got, std::span<const double> want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double d = got[i] - want[i];
    num += d * d;
    den += want[i] * want[i];
  }
  return std::sqrt(num) / std::sqrt(den);
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Linear-in-log-t interpolation of (nodes, values) at t; 0 outside the node
/// range. nodes must be increasing and positive.
inline double interp_log(std::span<const double> nodes,
                         std::span<const double> values, double t) {
  if (nodes.empty() || t < nodes.front() || t > nodes.back()) return 0.0;
  std::size_t hi = 1;
  while (hi < nodes.size() && nodes[hi] < t) ++hi;
  if (hi == nodes.size()) return values.back();
  const double u = std::log(t), u0 = std::log(nodes[hi - 1]),
               u1 = std::log(nodes[hi]);
  const double w = (u - u0) / (u1 - u0);
  return (1.0 - w) * values[hi - 1] + w * values[hi];
}

}  // namespace testhelp
