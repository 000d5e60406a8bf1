#pragma once

#include <cstdint>
#include <span>

#include "adaptik/matrix.hpp"

namespace adaptik {

/// Identifier of the pinned noise generator, recorded alongside synthesized
/// datasets so they can be regenerated exactly from (seed, sigma).
inline constexpr const char* kRngAlgorithm = "splitmix64-boxmuller-v1";

/// Standard normal draw number `index` of the stream named by `seed`.
/// Counter-based — each draw hashes (seed, index) independently, so any
/// sample can be produced without generating its predecessors.
double standard_normal(std::uint64_t seed, std::uint64_t index);

/// g[j] + sigma * z_j with z_j = standard_normal(seed, j).
/// Throws DomainError unless sigma is positive and finite.
Vector add_noise(std::span<const double> g, double sigma, std::uint64_t seed);

}  // namespace adaptik
