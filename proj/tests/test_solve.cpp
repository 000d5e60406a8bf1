#include <cmath>

#include "adaptik/errors.hpp"
#include "adaptik/forward.hpp"
#include "adaptik/noise.hpp"
#include "adaptik/solve.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace adaptik;

namespace {

SampledData figure1_data(double sigma, std::uint64_t seed) {
  SampledData d;
  d.s_points = log_spaced(1e-2, 1e2, 64);
  d.g.resize(64);
  for (std::size_t j = 0; j < 64; ++j) d.g[j] = figure1_image(d.s_points[j]);
  if (sigma > 0.0) {
    d.g = add_noise(d.g, sigma, seed);
    d.sigma_scalar = sigma;
    d.seed = seed;
    d.rng_algorithm = kRngAlgorithm;
  }
  return d;
}

}  // namespace

TEST_CASE("unpenalized directions pass through the l2 solve") {
  // data generated by a solution that is affine in log t costs no seminorm,
  // so a tiny alpha reproduces it essentially exactly
  SampledData d;
  d.s_points = log_spaced(0.1, 10.0, 12);
  const Grid grid = build_grid(9, 0.05, 20.0);
  const KernelMatrix k = assemble_kernel(grid, KernelKind::LaplaceExp, d.s_points);
  Vector f_true(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i)
    f_true[i] = 0.8 + 0.3 * std::log(grid.nodes[i]);
  d.g = k.entries.matvec(f_true);

  const RegularizedSolution sol = solve_at(
      d, KernelKind::LaplaceExp, StabilizerKind::SecondDerivLog, 9, 0.05, 20.0,
      1e-12);
  CHECK(sol.residual_norm <= 1e-8 * testhelp::norm(d.g));
}

TEST_CASE("auto alpha equals the explicit replay bit for bit") {
  const SampledData d = figure1_data(1e-3, 5);
  for (StabilizerKind stab :
       {StabilizerKind::Identity, StabilizerKind::SecondDerivLog}) {
    const RegularizedSolution a =
        solve_at(d, KernelKind::LaplaceExp, stab, 60, 1e-2, 1e2);
    const RegularizedSolution b =
        solve_at(d, KernelKind::LaplaceExp, stab, 60, 1e-2, 1e2, a.alpha);
    CHECK(a.f == b.f);
    CHECK(a.residual_norm == b.residual_norm);
    CHECK(a.seminorm == b.seminorm);
  }
}

TEST_CASE("zero data gives the zero solution") {
  SampledData d;
  d.s_points = log_spaced(0.1, 10.0, 10);
  d.g.assign(10, 0.0);
  const RegularizedSolution sol =
      solve_at(d, KernelKind::LaplaceExp, StabilizerKind::Identity, 8, 0.1, 10.0);
  for (double x : sol.f) CHECK(x == 0.0);
  CHECK(sol.gcv == 0.0);
  CHECK(sol.residual_norm == 0.0);
}

TEST_CASE("identical inputs produce identical bytes") {
  const SampledData d = figure1_data(1e-3, 9);
  const RegularizedSolution a =
      solve_at(d, KernelKind::LaplaceExp, StabilizerKind::SecondDerivLog, 80,
               1e-2, 1e2);
  const RegularizedSolution b =
      solve_at(d, KernelKind::LaplaceExp, StabilizerKind::SecondDerivLog, 80,
               1e-2, 1e2);
  CHECK(a.f == b.f);
  CHECK(a.alpha == b.alpha);
  CHECK(a.gcv == b.gcv);
}

TEST_CASE("diagnostics are recomputable from the parts") {
  const SampledData d = figure1_data(1e-3, 5);
  for (StabilizerKind stab :
       {StabilizerKind::Identity, StabilizerKind::SecondDerivLog}) {
    const RegularizedSolution sol =
        solve_at(d, KernelKind::LaplaceExp, stab, 60, 1e-2, 1e2);

    const KernelMatrix k =
        assemble_kernel(sol.grid, KernelKind::LaplaceExp, d.s_points);
    Vector r = k.entries.matvec(sol.f);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= d.g[j];
    CHECK(testhelp::norm(r) ==
          doctest::Approx(sol.residual_norm).epsilon(1e-10));

    double semi;
    if (stab == StabilizerKind::Identity) {
      semi = testhelp::norm(sol.f);
    } else {
      semi = testhelp::norm(build_l2(sol.grid).l.matvec(sol.f));
    }
    CHECK(semi == doctest::Approx(sol.seminorm).epsilon(1e-10));

    CHECK(sol.effective_dof > 0.0);
    CHECK(sol.effective_dof < 64.0);
    CHECK(sol.alpha > 0.0);
  }
}

TEST_CASE("prepared system replays match the one-shot path") {
  const SampledData d = figure1_data(1e-3, 7);
  const PreparedSystem sys = prepare_system(
      d, KernelKind::LaplaceExp, StabilizerKind::SecondDerivLog, 60, 1e-2, 1e2);
  const RegularizedSolution via_prepared = solve_prepared(sys, std::nullopt);
  const RegularizedSolution via_solve_at =
      solve_at(d, KernelKind::LaplaceExp, StabilizerKind::SecondDerivLog, 60,
               1e-2, 1e2);
  CHECK(via_prepared.alpha == via_solve_at.alpha);
  CHECK(via_prepared.f == via_solve_at.f);

  // explicit alpha through the prepared system, twice, same bytes
  const RegularizedSolution r1 = solve_prepared(sys, 1e-4);
  const RegularizedSolution r2 = solve_prepared(sys, 1e-4);
  CHECK(r1.f == r2.f);
  CHECK(r1.alpha == 1e-4);
}

TEST_CASE("a uniform per-point sigma column does not change the solution") {
  // whitening by a constant rescales the operator and the data together;
  // the alpha bracket rescales with it, so the recovered f is unchanged
  SampledData plain = figure1_data(1e-3, 5);
  SampledData scaled = plain;
  scaled.sigma_points.assign(plain.size(), 0.5);

  const RegularizedSolution a = solve_at(
      plain, KernelKind::LaplaceExp, StabilizerKind::Identity, 40, 1e-2, 1e2);
  const RegularizedSolution b = solve_at(
      scaled, KernelKind::LaplaceExp, StabilizerKind::Identity, 40, 1e-2, 1e2);
  CHECK(testhelp::rel_err(b.f, a.f) <= 1e-6);
  // alpha itself lives on the whitened scale
  CHECK(b.alpha == doctest::Approx(a.alpha / 0.25).epsilon(1e-2));
}

TEST_CASE("solve_at validates its inputs") {
  SampledData d;
  d.s_points = {1.0, 2.0};
  d.g = {1.0};
  CHECK_THROWS_AS(d.validate(), DomainError);
  d.g = {1.0, 2.0};
  CHECK_THROWS_AS(
      solve_at(d, KernelKind::LaplaceExp, StabilizerKind::Identity, 3, 0.1, 10.0),
      DomainError);
  CHECK_THROWS_AS(solve_at(d, KernelKind::LaplaceExp, StabilizerKind::Identity,
                           8, 10.0, 0.1),
                  DomainError);
  CHECK_THROWS_AS(solve_at(d, KernelKind::LaplaceExp, StabilizerKind::Identity,
                           8, 0.1, 10.0, -1.0),
                  DomainError);
}
