#include "adaptik/noise.hpp"

#include <cmath>
#include <numbers>

#include "adaptik/errors.hpp"

namespace adaptik {

namespace {

// splitmix64 output function applied to seed + counter * golden-gamma.
std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// top 53 bits -> (0, 1), strictly inside so log stays finite
double to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double standard_normal(std::uint64_t seed, std::uint64_t index) {
  const double u1 = to_unit(mix64(seed, 2 * index + 1));
  const double u2 = to_unit(mix64(seed, 2 * index + 2));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Vector add_noise(std::span<const double> g, double sigma, std::uint64_t seed) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw DomainError("add_noise: sigma must be positive and finite");
  }
  Vector out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    out[j] = g[j] + sigma * standard_normal(seed, j);
  }
  return out;
}

}  // namespace adaptik
