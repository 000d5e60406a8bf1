#include "adaptik/mixture.hpp"

#include <cmath>
#include <numbers>

#include "adaptik/errors.hpp"

namespace adaptik {

void MixtureSpec::validate() const {
  if (components.empty()) {
    throw DomainError("mixture: at least one component required");
  }
  for (const MixtureComponent& c : components) {
    const bool ok = std::isfinite(c.a) && c.a > 0.0 && std::isfinite(c.theta) &&
                    c.theta > 0.0 && std::isfinite(c.s_param) && c.s_param > 0.0;
    if (!ok) {
      throw DomainError("mixture: component parameters must be positive and finite");
    }
  }
}

double MixtureSpec::total_mass() const {
  double mass = 0.0;
  for (const MixtureComponent& c : components) mass += c.a;
  return mass;
}

double mixture_density(const MixtureSpec& spec, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("mixture_density: t must be positive");
  }
  const double log_t = std::log(t);
  double f = 0.0;
  for (const MixtureComponent& c : spec.components) {
    const double d = log_t - std::log(c.theta);
    f += c.a * std::sqrt(c.s_param / (2.0 * std::numbers::pi)) / t *
         std::exp(-0.5 * c.s_param * d * d);
  }
  return f;
}

}  // namespace adaptik
