#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "adaptik/matrix.hpp"

namespace adaptik {

/// Measured or simulated right-hand-side samples g(s_j).
struct SampledData {
  Vector s_points;  ///< strictly increasing, >= 0
  Vector g;
  Vector sigma_points;  ///< optional per-point noise levels; empty when absent
  std::optional<double> sigma_scalar;   ///< optional constant noise level
  std::optional<std::uint64_t> seed;    ///< recorded when noise was synthesized
  std::string rng_algorithm;            ///< generator identifier, "" when none

  std::size_t size() const { return s_points.size(); }

  /// Throws DomainError unless all invariants hold (matching lengths,
  /// strictly increasing finite s, finite g, positive sigmas).
  void validate() const;
};

}  // namespace adaptik
