#pragma once

#include "adaptik/grid.hpp"
#include "adaptik/matrix.hpp"

namespace adaptik {

enum class StabilizerKind {
  Identity,       ///< penalize solution magnitude
  SecondDerivLog, ///< penalize curvature in log t
};

const char* stabilizer_name(StabilizerKind kind);

/// Second-difference stabilizer on a log-uniform grid. Rows carry the stencil
/// [1, -2, 1] / h^2 in u = log t at interior nodes only, so the matrix is
/// (n-2) x n and annihilates anything affine in log t.
struct Stabilizer {
  StabilizerKind kind = StabilizerKind::Identity;
  Matrix l;         ///< (n-2) x n when SecondDerivLog, empty for Identity
  Vector log_nodes; ///< u_i = log t_i of the grid the matrix is tied to
  double h = 0.0;   ///< uniform log spacing
};

Stabilizer identity_stabilizer();

/// Builds the SecondDerivLog stabilizer for the grid (n >= 4 required).
Stabilizer build_l2(const Grid& grid);

}  // namespace adaptik
