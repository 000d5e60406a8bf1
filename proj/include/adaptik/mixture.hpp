#pragma once

#include <vector>

namespace adaptik {

/// One log-normal component: amplitude a, location theta, sharpness S.
/// The density is parametrized by precision — variance 1/S in log t — so
/// large S concentrates the component near theta.
struct MixtureComponent {
  double a = 1.0;
  double theta = 1.0;
  double s_param = 1.0;
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;

  void validate() const;        // throws DomainError
  double total_mass() const;    // sum of amplitudes; each shape integrates to 1
};

/// sum_i a_i * sqrt(S_i/(2 pi)) * (1/t) * exp(-S_i (log t - log theta_i)^2 / 2).
/// Each shape is a unit-mass log-normal with mode at theta * exp(-1/S).
/// Throws DomainError on t <= 0.
double mixture_density(const MixtureSpec& spec, double t);

}  // namespace adaptik
