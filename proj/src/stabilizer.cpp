#include "adaptik/stabilizer.hpp"

#include <cmath>

#include "adaptik/errors.hpp"

namespace adaptik {

const char* stabilizer_name(StabilizerKind kind) {
  return kind == StabilizerKind::Identity ? "identity" : "l2";
}

Stabilizer identity_stabilizer() {
  Stabilizer s;
  s.kind = StabilizerKind::Identity;
  return s;
}

Stabilizer build_l2(const Grid& grid) {
  if (grid.n < 4) throw DomainError("build_l2: grid needs n >= 4");

  Stabilizer s;
  s.kind = StabilizerKind::SecondDerivLog;
  s.h = grid.log_step();
  s.log_nodes.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) s.log_nodes[i] = std::log(grid.nodes[i]);

  const double inv_h2 = 1.0 / (s.h * s.h);
  s.l = Matrix(grid.n - 2, grid.n);
  for (std::size_t r = 0; r < grid.n - 2; ++r) {
    s.l(r, r) = inv_h2;
    s.l(r, r + 1) = -2.0 * inv_h2;
    s.l(r, r + 2) = inv_h2;
  }
  return s;
}

}  // namespace adaptik
