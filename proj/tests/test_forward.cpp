#include <cmath>

#include "adaptik/errors.hpp"
#include "adaptik/forward.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace adaptik;

TEST_CASE("integrate_log_trap handles exact and smooth integrands") {
  // 1/t is constant after the log substitution: first pass already exact
  const double got = integrate_log_trap([](double t) { return 1.0 / t; }, 0.3,
                                        700.0, 1e-10);
  CHECK(got == doctest::Approx(std::log(700.0 / 0.3)).epsilon(1e-12));

  const double e1 = integrate_log_trap([](double t) { return std::exp(-t); },
                                       1e-6, 50.0, 1e-10);
  CHECK(e1 == doctest::Approx(std::exp(-1e-6) - std::exp(-50.0)).epsilon(1e-8));

  CHECK_THROWS_AS(integrate_log_trap([](double) { return 1.0; }, 0.0, 1.0, 1e-8),
                  DomainError);
  CHECK_THROWS_AS(integrate_log_trap([](double) { return 1.0; }, 2.0, 1.0, 1e-8),
                  DomainError);
}

TEST_CASE("forward transform at s = 0 returns the total mass") {
  const MixtureSpec spec{{{1.0, 0.3, 8.0}, {2.5, 4.0, 20.0}}};
  const double s0 = 0.0;
  const Vector lap = forward_transform(spec, KernelKind::LaplaceExp, {&s0, 1});
  const Vector nmr = forward_transform(spec, KernelKind::InverseExp, {&s0, 1});
  CHECK(lap[0] == doctest::Approx(3.5).epsilon(1e-8));
  CHECK(nmr[0] == doctest::Approx(3.5).epsilon(1e-8));
  CHECK(lap[0] == doctest::Approx(nmr[0]).epsilon(1e-12));
}

TEST_CASE("a sharp component transforms like a point mass") {
  // S = 2500: the density is nearly delta(t - 1), so the Laplace image is
  // close to exp(-s); the width correction is O(s^2 / S).
  const MixtureSpec spec{{{1.0, 1.0, 2500.0}}};
  const Vector s = {0.0, 1.0, 2.5, 5.0};
  const Vector g = forward_transform(spec, KernelKind::LaplaceExp, s);
  for (std::size_t j = 0; j < s.size(); ++j) {
    CHECK(g[j] == doctest::Approx(std::exp(-s[j])).epsilon(1e-2));
  }
}

TEST_CASE("forward transform matches an independent quadrature") {
  const MixtureSpec spec{
      {{1.0, 0.1, 10.0}, {2.0, 1.0, 13.0}, {6.0, 10.0, 15.0}}};
  const Vector s = {0.1, 1.0, 10.0};
  const Vector g = forward_transform(spec, KernelKind::LaplaceExp, s);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double want = testhelp::simpson_log(
        [&](double t) {
          return std::exp(-s[j] * t) * mixture_density(spec, t);
        },
        1e-3, 1e3, 1e-11);
    CHECK(g[j] == doctest::Approx(want).epsilon(1e-6));
  }

  CHECK_THROWS_AS(forward_transform(spec, KernelKind::LaplaceExp,
                                    Vector{1.0, -2.0}),
                  DomainError);
}

TEST_CASE("benchmark pair: values and normalization") {
  CHECK(figure1_image(0.0) == 1.0);
  CHECK(figure1_image(2.0) == std::exp(-1.0));  // sqrt(2/2) = 1
  CHECK_THROWS_AS(figure1_image(-0.1), DomainError);
  CHECK_THROWS_AS(figure1_density(0.0), DomainError);
  CHECK_THROWS_AS(figure1_density(-1.0), DomainError);

  // unimodal with mode at 1/12
  const double mode = 1.0 / 12.0;
  CHECK(figure1_density(mode) > figure1_density(0.05));
  CHECK(figure1_density(mode) > figure1_density(0.15));
  CHECK(figure1_density(10.0) < figure1_density(1.0));

  // unit mass; the t^-3/2 tail needs a wide upper limit
  const double mass = testhelp::simpson_log(figure1_density, 1e-8, 1e16, 1e-9);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

  const Figure1Pair pair = figure1_pair();
  CHECK(pair.density == &figure1_density);
  CHECK(pair.image == &figure1_image);
}

TEST_CASE("benchmark pair: density transforms to the image") {
  for (double s : {0.1, 1.0, 10.0}) {
    const double got = testhelp::simpson_log(
        [&](double t) { return std::exp(-s * t) * figure1_density(t); }, 1e-10,
        400.0 / s + 10.0, 1e-11);
    CHECK(got == doctest::Approx(figure1_image(s)).epsilon(1e-6));
  }
}
