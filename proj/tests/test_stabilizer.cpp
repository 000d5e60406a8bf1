#include <cmath>

#include "adaptik/errors.hpp"
#include "adaptik/stabilizer.hpp"
#include "doctest.h"

using namespace adaptik;

TEST_CASE("identity stabilizer is the empty tag") {
  const Stabilizer s = identity_stabilizer();
  CHECK(s.kind == StabilizerKind::Identity);
  CHECK(s.l.rows() == 0);
}

TEST_CASE("second-difference shape and stencil placement") {
  const Grid grid = build_grid(10, 0.1, 10.0);
  const Stabilizer s = build_l2(grid);
  CHECK(s.kind == StabilizerKind::SecondDerivLog);
  REQUIRE(s.l.rows() == 8);
  REQUIRE(s.l.cols() == 10);
  const double inv_h2 = 1.0 / (s.h * s.h);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 10; ++c) {
      double want = 0.0;
      if (c == r || c == r + 2) want = inv_h2;
      if (c == r + 1) want = -2.0 * inv_h2;
      CHECK(s.l(r, c) == doctest::Approx(want).epsilon(1e-15));
    }
  }
  CHECK(s.h == doctest::Approx(grid.log_step()).epsilon(1e-15));
}

TEST_CASE("anything affine in log t is annihilated") {
  for (std::size_t n : {20, 40, 60, 80, 120, 160, 200}) {
    const Grid grid = build_grid(n, 1e-2, 1e2);
    const Stabilizer s = build_l2(grid);
    Vector v(n);
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = 0.7 - 1.3 * std::log(grid.nodes[i]);
      vmax = std::max(vmax, std::fabs(v[i]));
    }
    const Vector lv = s.l.matvec(v);
    const double bound = 1e-12 * vmax / (s.h * s.h);
    for (double x : lv) CHECK(std::fabs(x) <= bound);

    const Vector ones(n, 1.0);
    for (double x : s.l.matvec(ones)) CHECK(std::fabs(x) <= bound);
  }
}

TEST_CASE("second difference of a log-quadratic is the constant 2") {
  const Grid grid = build_grid(24, 0.05, 50.0);
  const Stabilizer s = build_l2(grid);
  Vector v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double u = std::log(grid.nodes[i]);
    v[i] = u * u;
  }
  for (double x : s.l.matvec(v))
    CHECK(x == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("build_l2 needs a real grid") {
  CHECK_THROWS_AS(build_l2(Grid{}), DomainError);
}
