#include "adaptik/data.hpp"

#include <cmath>

#include "adaptik/errors.hpp"

namespace adaptik {

void SampledData::validate() const {
  if (s_points.empty()) throw DomainError("sampled data: empty");
  if (g.size() != s_points.size()) throw DomainError("sampled data: s/g length mismatch");
  if (!sigma_points.empty() && sigma_points.size() != s_points.size())
    throw DomainError("sampled data: sigma length mismatch");
  for (std::size_t j = 0; j < s_points.size(); ++j) {
    if (!std::isfinite(s_points[j]) || s_points[j] < 0.0)
      throw DomainError("sampled data: s values must be finite and >= 0");
    if (j > 0 && !(s_points[j] > s_points[j - 1]))
      throw DomainError("sampled data: s values must be strictly increasing");
    if (!std::isfinite(g[j])) throw DomainError("sampled data: non-finite g value");
    if (!sigma_points.empty() && !(sigma_points[j] > 0.0 && std::isfinite(sigma_points[j])))
      throw DomainError("sampled data: sigma values must be positive and finite");
  }
  if (sigma_scalar && !(*sigma_scalar > 0.0 && std::isfinite(*sigma_scalar)))
    throw DomainError("sampled data: scalar sigma must be positive and finite");
}

}  // namespace adaptik
