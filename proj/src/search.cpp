#include "adaptik/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "adaptik/errors.hpp"

namespace adaptik {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
// Slack for feasibility tests in log coordinates, so a boundary candidate
// survives the round trip through pow/log10.
constexpr double kLogSlack = 1e-12;
constexpr double kTieRel = 1e-12;

bool wide_enough(double t_min, double t_max, double min_decades) {
  if (!(t_min > 0.0) || !(t_max > t_min)) return false;
  return std::log10(t_max / t_min) >= min_decades - kLogSlack;
}

}  // namespace

void SearchSpace::validate() const {
  if (n_ladder.empty()) throw DomainError("search space: n ladder is empty");
  for (std::size_t i = 0; i < n_ladder.size(); ++i) {
    if (n_ladder[i] < 4) {
      throw DomainError("search space: ladder entries must be >= 4");
    }
    if (i > 0 && n_ladder[i] <= n_ladder[i - 1]) {
      throw DomainError("search space: n ladder must be strictly increasing");
    }
  }
  auto range_ok = [](double lo, double hi) {
    return std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && lo <= hi;
  };
  if (!range_ok(t_min_lo, t_min_hi)) {
    throw DomainError("search space: t_min range must satisfy 0 < lo <= hi");
  }
  if (!range_ok(t_max_lo, t_max_hi)) {
    throw DomainError("search space: t_max range must satisfy 0 < lo <= hi");
  }
  if (!std::isfinite(min_decades) || min_decades <= 0.0) {
    throw DomainError("search space: min_decades must be positive");
  }
}

std::pair<double, double> evaluate_candidate(const SampledData& data,
                                             KernelKind kind,
                                             StabilizerKind stab,
                                             std::size_t n, double t_min,
                                             double t_max,
                                             double min_decades) {
  data.validate();  // caller errors propagate; candidate failures below do not
  if (!wide_enough(t_min, t_max, min_decades)) return {kNan, kInf};
  try {
    const PreparedSystem sys = prepare_system(data, kind, stab, n, t_min, t_max);
    const AlphaResult r = minimize_alpha(sys.factors, sys.rhs);
    return {r.alpha, r.score};
  } catch (const DomainError&) {
  } catch (const RankError&) {
  } catch (const ConvergenceError&) {
  }
  return {kNan, kInf};
}

namespace {

// Smaller n first, then narrower interval, then the left-most one: the
// cheaper and more conservative discretization wins a score tie.
bool key_less(const Candidate& a, const Candidate& b) {
  if (a.n != b.n) return a.n < b.n;
  const double ra = a.t_max / a.t_min;
  const double rb = b.t_max / b.t_min;
  if (ra != rb) return ra < rb;
  if (a.t_min != b.t_min) return a.t_min < b.t_min;
  return a.t_max < b.t_max;
}

bool scores_tie(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= kTieRel * std::max(std::abs(a), std::abs(b));
}

// Order-independent selection: exact minimum first, then the tie-break key
// over everything within 1e-12 relative of it. Returns trace.size() when no
// candidate scored finite.
std::size_t select_best(const std::vector<Candidate>& trace) {
  double min_score = kInf;
  for (const Candidate& c : trace) min_score = std::min(min_score, c.score);
  if (!std::isfinite(min_score)) return trace.size();
  std::size_t best = trace.size();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!scores_tie(trace[i].score, min_score)) continue;
    if (best == trace.size() || key_less(trace[i], trace[best])) best = i;
  }
  return best;
}

// 6-point log-uniform axis, collapsed when the range is degenerate.
std::vector<double> axis_values(double lo, double hi, std::size_t count) {
  Vector v = log_spaced(lo, hi, count);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct NmPoint {
  std::array<double, 2> z{};  // (log10 t_min, log10 t_max)
  double score = kInf;
};

// Deterministic Nelder-Mead on (log10 t_min, log10 t_max) at fixed n.
// Standard reflection/expansion/contraction/shrink coefficients; out-of-range
// points score +inf, which steers the simplex back inside. Every objective
// call lands in the trace.
void nelder_mead(const SampledData& data, KernelKind kind, StabilizerKind stab,
                 std::size_t n, const SearchSpace& space,
                 const Candidate& start, std::vector<Candidate>& trace) {
  constexpr int kBudget = 60;
  constexpr double kSizeTol = 1e-3;
  constexpr double kEdge = 0.25;

  const std::array<double, 2> lo{std::log10(space.t_min_lo),
                                 std::log10(space.t_max_lo)};
  const std::array<double, 2> hi{std::log10(space.t_min_hi),
                                 std::log10(space.t_max_hi)};

  int evals = 0;
  auto can_eval = [&]() { return evals < kBudget; };
  auto objective = [&](const std::array<double, 2>& z) {
    ++evals;
    Candidate c;
    c.n = n;
    c.t_min = std::pow(10.0, z[0]);
    c.t_max = std::pow(10.0, z[1]);
    c.stage = 2;
    const bool inside = z[0] >= lo[0] - kLogSlack && z[0] <= hi[0] + kLogSlack &&
                        z[1] >= lo[1] - kLogSlack && z[1] <= hi[1] + kLogSlack;
    if (inside) {
      const auto [alpha, score] = evaluate_candidate(
          data, kind, stab, n, c.t_min, c.t_max, space.min_decades);
      c.alpha = alpha;
      c.score = score;
    }
    trace.push_back(c);
    return c.score;
  };

  std::array<NmPoint, 3> sx;
  sx[0].z = {std::log10(start.t_min), std::log10(start.t_max)};
  sx[0].score = start.score;
  for (int d = 0; d < 2; ++d) {
    NmPoint p = sx[0];
    // step toward whichever side of the range has more room
    const double step = (hi[d] - p.z[d] >= p.z[d] - lo[d]) ? kEdge : -kEdge;
    p.z[d] += step;
    p.score = objective(p.z);
    sx[d + 1] = p;
  }

  auto order = [&]() {
    std::stable_sort(sx.begin(), sx.end(),
                     [](const NmPoint& a, const NmPoint& b) {
                       return a.score < b.score;
                     });
  };
  auto shrink = [&]() {
    for (int v = 1; v < 3; ++v) {
      if (!can_eval()) return;
      for (int d = 0; d < 2; ++d) {
        sx[v].z[d] = sx[0].z[d] + 0.5 * (sx[v].z[d] - sx[0].z[d]);
      }
      sx[v].score = objective(sx[v].z);
    }
  };

  while (true) {
    order();
    double size = 0.0;
    for (int v = 1; v < 3; ++v) {
      for (int d = 0; d < 2; ++d) {
        size = std::max(size, std::abs(sx[v].z[d] - sx[0].z[d]));
      }
    }
    if (size <= kSizeTol || !can_eval()) break;

    std::array<double, 2> cen{};
    for (int d = 0; d < 2; ++d) cen[d] = 0.5 * (sx[0].z[d] + sx[1].z[d]);
    std::array<double, 2> xr{};
    for (int d = 0; d < 2; ++d) xr[d] = cen[d] + (cen[d] - sx[2].z[d]);
    const double fr = objective(xr);

    if (fr < sx[0].score) {
      if (can_eval()) {
        std::array<double, 2> xe{};
        for (int d = 0; d < 2; ++d) xe[d] = cen[d] + 2.0 * (cen[d] - sx[2].z[d]);
        const double fe = objective(xe);
        sx[2] = (fe < fr) ? NmPoint{xe, fe} : NmPoint{xr, fr};
      } else {
        sx[2] = NmPoint{xr, fr};
      }
    } else if (fr < sx[1].score) {
      sx[2] = NmPoint{xr, fr};
    } else if (fr < sx[2].score) {
      if (!can_eval()) { sx[2] = NmPoint{xr, fr}; continue; }
      std::array<double, 2> xc{};
      for (int d = 0; d < 2; ++d) xc[d] = cen[d] + 0.5 * (xr[d] - cen[d]);
      const double fc = objective(xc);
      if (fc <= fr) {
        sx[2] = NmPoint{xc, fc};
      } else {
        shrink();
      }
    } else {
      if (!can_eval()) break;
      std::array<double, 2> xc{};
      for (int d = 0; d < 2; ++d) xc[d] = cen[d] - 0.5 * (cen[d] - sx[2].z[d]);
      const double fc = objective(xc);
      if (fc < sx[2].score) {
        sx[2] = NmPoint{xc, fc};
      } else {
        shrink();
      }
    }
  }
}

}  // namespace

SearchResult search(const SampledData& data, KernelKind kind,
                    StabilizerKind stab, const SearchSpace& space) {
  space.validate();
  data.validate();

  SearchResult out;
  const std::vector<double> tmins = axis_values(space.t_min_lo, space.t_min_hi, 6);
  const std::vector<double> tmaxs = axis_values(space.t_max_lo, space.t_max_hi, 6);

  // Stage 1: full ladder x endpoint-grid scan over the feasible rectangle.
  bool any_feasible = false;
  for (std::size_t n : space.n_ladder) {
    for (double a : tmins) {
      for (double b : tmaxs) {
        if (!wide_enough(a, b, space.min_decades)) continue;
        any_feasible = true;
        Candidate c;
        c.n = n;
        c.t_min = a;
        c.t_max = b;
        c.stage = 1;
        std::tie(c.alpha, c.score) =
            evaluate_candidate(data, kind, stab, n, a, b, space.min_decades);
        out.trace.push_back(c);
      }
    }
  }
  if (!any_feasible) {
    throw InfeasibleError(
        "search: no (t_min, t_max) in range satisfies the width floor");
  }
  std::size_t best = select_best(out.trace);
  if (best == out.trace.size()) {
    throw InfeasibleError("search: every candidate failed to score");
  }

  // Stage 2: refine the endpoints at the winning n. Skipped when both
  // ranges are single points — there is nothing to move.
  const bool point_space =
      space.t_min_lo == space.t_min_hi && space.t_max_lo == space.t_max_hi;
  if (!point_space) {
    nelder_mead(data, kind, stab, out.trace[best].n, space, out.trace[best],
                out.trace);
    best = select_best(out.trace);
  }

  // Stage 3: the refined endpoints at the neighboring ladder sizes.
  const Candidate refined = out.trace[best];
  const auto pos = std::find(space.n_ladder.begin(), space.n_ladder.end(),
                             refined.n) - space.n_ladder.begin();
  for (const long step : {-1L, +1L}) {
    const long q = pos + step;
    if (q < 0 || q >= static_cast<long>(space.n_ladder.size())) continue;
    Candidate c;
    c.n = space.n_ladder[q];
    c.t_min = refined.t_min;
    c.t_max = refined.t_max;
    c.stage = 3;
    std::tie(c.alpha, c.score) = evaluate_candidate(
        data, kind, stab, c.n, c.t_min, c.t_max, space.min_decades);
    out.trace.push_back(c);
  }
  best = select_best(out.trace);

  out.best = out.trace[best];
  out.evaluations = out.trace.size();
  out.solution = solve_at(data, kind, stab, out.best.n, out.best.t_min,
                          out.best.t_max, std::nullopt);
  return out;
}

}  // namespace adaptik
