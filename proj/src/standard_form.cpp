#include "adaptik/standard_form.hpp"

#include <algorithm>
#include <cmath>

#include "adaptik/errors.hpp"
#include "adaptik/simd/vec_ops.hpp"

namespace adaptik {
namespace {

constexpr double kCondLimit = 1e12;
constexpr std::size_t kBand = 2;  // L L^T is pentadiagonal

// In-place banded Cholesky, lower factor. G must be SPD.
void banded_cholesky(Matrix& g) {
  const std::size_t p = g.rows();
  for (std::size_t j = 0; j < p; ++j) {
    double d = g(j, j);
    const std::size_t k0 = j > kBand ? j - kBand : 0;
    for (std::size_t k = k0; k < j; ++k) d -= g(j, k) * g(j, k);
    if (!(d > 0.0)) throw RankError("standard form: stabilizer Gram matrix not positive definite");
    const double ljj = std::sqrt(d);
    g(j, j) = ljj;
    for (std::size_t i = j + 1; i < std::min(j + kBand + 1, p); ++i) {
      double s = g(i, j);
      const std::size_t kk0 = i > kBand ? i - kBand : 0;
      for (std::size_t k = std::max(kk0, k0); k < j; ++k) s -= g(i, k) * g(j, k);
      g(i, j) = s / ljj;
    }
  }
}

void banded_chol_solve(const Matrix& chol, double* b) {
  const std::size_t p = chol.rows();
  for (std::size_t i = 0; i < p; ++i) {
    double s = b[i];
    const std::size_t k0 = i > kBand ? i - kBand : 0;
    for (std::size_t k = k0; k < i; ++k) s -= chol(i, k) * b[k];
    b[i] = s / chol(i, i);
  }
  for (std::size_t ii = p; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < std::min(ii + kBand + 1, p); ++k) s -= chol(k, ii) * b[k];
    b[ii] = s / chol(ii, ii);
  }
}

// Householder vector for x: returns (v, tau, alpha) with (I - tau v v^T) x =
// alpha e1. Zero x yields tau = 0 (identity reflector).
void make_householder(std::span<const double> x, Vector& v, double& tau, double& alpha) {
  const double nrm = norm2(x);
  v.assign(x.begin(), x.end());
  if (nrm == 0.0) {
    tau = 0.0;
    alpha = 0.0;
    return;
  }
  alpha = x[0] >= 0.0 ? -nrm : nrm;
  v[0] -= alpha;
  const double vnrm2 = dot(v, v);
  tau = vnrm2 > 0.0 ? 2.0 / vnrm2 : 0.0;
}

void apply_householder(std::span<const double> v, double tau, double* y, std::size_t offset,
                       std::size_t len) {
  if (tau == 0.0) return;
  const auto& ops = simd::active_ops();
  const double proj = tau * ops.dot(v.data(), y + offset, len);
  ops.axpy(-proj, v.data(), y + offset, len);
}

}  // namespace

Vector StandardFormMap::apply_null_pinv(std::span<const double> rhs) const {
  // L^+ rhs = L^T (L L^T)^{-1} rhs
  Vector z(rhs.begin(), rhs.end());
  banded_chol_solve(chol_, z.data());
  return l_.matvec_t(z);
}

Vector StandardFormMap::qt_apply(std::span<const double> y) const {
  Vector q(y.begin(), y.end());
  apply_householder(hv1_, tau1_, q.data(), 0, q.size());
  apply_householder(hv2_, tau2_, q.data(), 1, q.size() - 1);
  return q;
}

Vector StandardFormMap::reduce_data(std::span<const double> g) const {
  if (g.size() != k_.rows()) throw DomainError("standard form: data length mismatch");
  Vector q = qt_apply(g);
  return Vector(q.begin() + 2, q.end());
}

Vector StandardFormMap::back_map(std::span<const double> x_bar, std::span<const double> g) const {
  if (x_bar.size() != k_bar_.cols() || g.size() != k_.rows())
    throw DomainError("standard form: back_map size mismatch");

  // Seminorm-carrying part.
  Vector y = apply_null_pinv(x_bar);

  // Null-space coefficients from the least-squares fit of the remaining
  // residual onto K W: z = R^{-1} (Q^T (g - K y))[0:2].
  Vector r(g.begin(), g.end());
  Vector ky = k_.matvec(y);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ky[i];
  Vector qr = qt_apply(r);
  const double z1 = (qr[1]) / r22_;
  const double z0 = (qr[0] - r12_ * z1) / r11_;

  for (std::size_t i = 0; i < y.size(); ++i) y[i] += z0 * w_const_[i] + z1 * w_log_[i];
  return y;
}

StandardFormMap to_standard_form(const Matrix& k, const Stabilizer& l2) {
  if (l2.kind != StabilizerKind::SecondDerivLog)
    throw DomainError("to_standard_form: requires the SecondDerivLog stabilizer");
  const std::size_t m = k.rows();
  const std::size_t n = k.cols();
  if (l2.l.cols() != n) throw DomainError("to_standard_form: stabilizer size mismatch");
  if (m < 3) throw DomainError("to_standard_form: need at least 3 rows");

  StandardFormMap map;
  map.k_ = k;
  map.l_ = l2.l;
  map.w_const_.assign(n, 1.0);
  map.w_log_ = l2.log_nodes;

  // Banded Cholesky of the stabilizer Gram matrix.
  map.chol_ = l2.l.matmul(l2.l.transposed());
  banded_cholesky(map.chol_);

  // QR of K W (m x 2) via two reflectors; R's singular values gauge how well
  // the data constrains the unpenalized null-space component.
  Vector kw0 = k.matvec(map.w_const_);
  Vector kw1 = k.matvec(map.w_log_);
  make_householder(kw0, map.hv1_, map.tau1_, map.r11_);
  apply_householder(map.hv1_, map.tau1_, kw1.data(), 0, m);
  map.r12_ = kw1[0];
  make_householder(std::span<const double>(kw1).subspan(1), map.hv2_, map.tau2_, map.r22_);

  {
    const double a = std::abs(map.r11_), b = std::abs(map.r12_), d = std::abs(map.r22_);
    const double tsum = a * a + b * b + d * d;
    const double det = a * d;
    const double disc = std::sqrt(std::max(0.0, tsum * tsum - 4.0 * det * det));
    const double smax = std::sqrt(0.5 * (tsum + disc));
    const double smin = smax > 0.0 ? det / smax : 0.0;
    if (!(smin > 0.0) || smax / smin > kCondLimit)
      throw RankError("to_standard_form: K restricted to null(L) is numerically singular");
  }

  // K L^+ = (K L^T) (L L^T)^{-1}, row count still m; then project away the
  // two null-space rows with the reflectors and drop them.
  Matrix klt = k.matmul(l2.l.transposed());  // m x (n-2); L is sparse so this is cheap
  const std::size_t p = n - 2;
  Matrix klp(m, p);
  {
    Matrix kltt = klt.transposed();  // (n-2) x m columns become solve RHS rows
    for (std::size_t r = 0; r < m; ++r) {
      Vector row(p);
      for (std::size_t c = 0; c < p; ++c) row[c] = kltt(c, r);
      banded_chol_solve(map.chol_, row.data());
      for (std::size_t c = 0; c < p; ++c) klp(r, c) = row[c];
    }
  }

  map.k_bar_ = Matrix(m - 2, p);
  for (std::size_t c = 0; c < p; ++c) {
    Vector col(m);
    for (std::size_t r = 0; r < m; ++r) col[r] = klp(r, c);
    apply_householder(map.hv1_, map.tau1_, col.data(), 0, m);
    apply_householder(map.hv2_, map.tau2_, col.data(), 1, m - 1);
    for (std::size_t r = 2; r < m; ++r) map.k_bar_(r - 2, c) = col[r];
  }
  return map;
}

}  // namespace adaptik
