#pragma once

#include <limits>
#include <vector>

#include "adaptik/solve.hpp"

namespace adaptik {

/// The outer search domain: a ladder of grid sizes and rectangular ranges
/// for the grid endpoints, plus a floor on log10(t_max/t_min) that rules
/// out degenerate near-empty integration intervals.
struct SearchSpace {
  std::vector<std::size_t> n_ladder{20, 40, 60, 80, 120, 160, 200};
  double t_min_lo = 0.0, t_min_hi = 0.0;
  double t_max_lo = 0.0, t_max_hi = 0.0;
  double min_decades = 1.0;

  void validate() const;  // throws DomainError
};

/// One evaluated point of the outer objective. score is +inf (and alpha
/// NaN) when the candidate was infeasible or its evaluation failed.
struct Candidate {
  std::size_t n = 0;
  double t_min = 0.0, t_max = 0.0;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double score = std::numeric_limits<double>::infinity();
  int stage = 0;
};

struct SearchResult {
  Candidate best;
  RegularizedSolution solution;
  std::vector<Candidate> trace;  ///< every evaluation, in order
  std::size_t evaluations = 0;   ///< == trace.size()
};

/// Scores one discretization: builds the system, factors it once, and
/// minimizes the cross-validation objective over alpha. Grid construction
/// failures, rank/convergence failures, and cross-validation trace failures
/// all come back as score = +inf rather than throwing, so a sweep can step
/// over bad candidates. Width below min_decades is likewise +inf.
std::pair<double, double> evaluate_candidate(const SampledData& data,
                                             KernelKind kind,
                                             StabilizerKind stab,
                                             std::size_t n, double t_min,
                                             double t_max,
                                             double min_decades);

/// Minimizes the cross-validation score jointly over (alpha, n, t_min,
/// t_max): a coarse scan of the ladder against a 6x6 log-spaced endpoint
/// grid, Nelder-Mead refinement of (t_min, t_max) at the winning n, then a
/// re-check of the refined endpoints at the neighboring ladder sizes.
/// Score ties within 1e-12 relative resolve toward smaller n, then smaller
/// t_max/t_min, so the outcome is independent of evaluation order. Throws
/// InfeasibleError when no candidate scores finite.
SearchResult search(const SampledData& data, KernelKind kind,
                    StabilizerKind stab, const SearchSpace& space);

}  // namespace adaptik
