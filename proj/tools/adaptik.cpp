// Command-line driver: dataset simulation, inversion runs, objective-surface
// export, and the forward-oracle self check.
//
// Exit codes: 0 success, 1 numerical failure, 2 input/usage error.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "adaptik/config.hpp"
#include "adaptik/data.hpp"
#include "adaptik/dataset_io.hpp"
#include "adaptik/diagnostics.hpp"
#include "adaptik/errors.hpp"
#include "adaptik/forward.hpp"
#include "adaptik/grid.hpp"
#include "adaptik/kernel.hpp"
#include "adaptik/mixture.hpp"
#include "adaptik/noise.hpp"
#include "adaptik/search.hpp"
#include "adaptik/simd/vec_ops.hpp"
#include "adaptik/solve.hpp"

namespace {

using namespace adaptik;
using nlohmann::json;
namespace fs = std::filesystem;

double parse_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(what + ": expected a number, got \"" + std::string(text) + "\"");
  }
  return v;
}

std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& flag) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError(flag + ": expected lo:hi, got \"" + text + "\"");
  }
  const double lo = parse_double(std::string_view(text).substr(0, colon), flag);
  const double hi = parse_double(std::string_view(text).substr(colon + 1), flag);
  return {lo, hi};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ParseError("write failed: " + path.string());
}

// Flag values as typed by the user; presence checked via CLI11 counts so a
// config file can sit between built-in defaults and explicit flags.
struct CommonArgs {
  std::string kernel, stabilizer, n_ladder, tmin_range, tmax_range;
  std::string out_dir, config;
  double min_decades = 0.0;
  double threshold_frac = 0.0;
  double min_prominence_frac = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool search_flags) {
  cmd->add_option("--kernel", a.kernel, "Kernel family: laplace | nmr");
  cmd->add_option("--out-dir", a.out_dir, "Output directory (default .)");
  cmd->add_option("--config", a.config, "JSON config file (flags override it)");
  if (search_flags) {
    cmd->add_option("--stabilizer", a.stabilizer,
                    "Stabilizer: identity | l2 | both");
    cmd->add_option("--n-ladder", a.n_ladder,
                    "Comma-separated grid sizes, e.g. 20,40,80");
    cmd->add_option("--tmin-range", a.tmin_range,
                    "lo:hi search range for the grid left endpoint");
    cmd->add_option("--tmax-range", a.tmax_range,
                    "lo:hi search range for the grid right endpoint");
    cmd->add_option("--min-decades", a.min_decades,
                    "Minimum log10(t_max/t_min) (default 1)");
    cmd->add_option("--threshold-frac", a.threshold_frac,
                    "Disagreement flag threshold as a fraction of the "
                    "solution scale (default 0.1)");
    cmd->add_option("--min-prominence-frac", a.min_prominence_frac,
                    "Peak prominence floor as a fraction of max f "
                    "(default 0.05)");
  }
}

std::vector<std::size_t> parse_ladder(const std::string& text) {
  std::vector<std::size_t> ladder;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string_view field(text.data() + start, comma - start);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
      throw ParseError("--n-ladder: expected comma-separated integers, got \"" +
                       text + "\"");
    }
    ladder.push_back(v);
    start = comma + 1;
  }
  return ladder;
}

bool flag_given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

RunConfig merge_config(const CLI::App* cmd, const CommonArgs& a) {
  RunConfig cfg;
  if (flag_given(cmd, "--config")) cfg = load_config_file(a.config);
  if (flag_given(cmd, "--kernel")) cfg.kernel = parse_kernel_name(a.kernel);
  if (flag_given(cmd, "--stabilizer")) {
    cfg.stabilizer = parse_stabilizer_choice(a.stabilizer);
  }
  if (flag_given(cmd, "--n-ladder")) cfg.n_ladder = parse_ladder(a.n_ladder);
  if (flag_given(cmd, "--tmin-range")) {
    cfg.tmin_range = parse_range(a.tmin_range, "--tmin-range");
  }
  if (flag_given(cmd, "--tmax-range")) {
    cfg.tmax_range = parse_range(a.tmax_range, "--tmax-range");
  }
  if (flag_given(cmd, "--min-decades")) cfg.min_decades = a.min_decades;
  if (flag_given(cmd, "--threshold-frac")) cfg.threshold_frac = a.threshold_frac;
  if (flag_given(cmd, "--min-prominence-frac")) {
    cfg.min_prominence_frac = a.min_prominence_frac;
  }
  if (flag_given(cmd, "--out-dir")) cfg.out_dir = a.out_dir;
  return cfg;
}

// Endpoint ranges when the user gives none: center them on the time scales
// the data can actually resolve. For exp(-s*t) a sample at s probes t near
// 1/s, so t_min comes from the largest s and t_max from the smallest
// positive s; for exp(-s/t) the roles are direct (t near s). Two decades
// of slack on each side.
SearchSpace make_space(const RunConfig& cfg, const SampledData& data) {
  SearchSpace sp;
  sp.n_ladder = cfg.n_ladder;
  sp.min_decades = cfg.min_decades;

  double s_pos = 0.0;  // smallest strictly positive sample point
  for (double s : data.s_points) {
    if (s > 0.0) { s_pos = s; break; }
  }
  const double s_max = data.s_points.back();
  if ((!cfg.tmin_range || !cfg.tmax_range) && s_pos == 0.0) {
    throw DomainError("cannot derive t ranges: no positive s in the data");
  }

  // The sampled s illuminate t inside a window with endpoints t_small and
  // t_large (reciprocal of the s extremes for exp(-s*t), direct for
  // exp(-s/t)). Default search ranges bracket each endpoint by one decade:
  // the left endpoint never rises above 10*t_small, so no candidate grid
  // cuts into the solution's sensed support (cut grids dump the missing
  // mass into boundary spikes), and never falls below t_small/10, where
  // kernel columns degenerate into constants with log-quadrature weights
  // attached and the fit stops seeing them. Same either side of t_large.
  const bool laplace = cfg.kernel == KernelKind::LaplaceExp;
  const double t_small = laplace ? 1.0 / s_max : s_pos;
  const double t_large = laplace ? 1.0 / s_pos : s_max;
  if (cfg.tmin_range) {
    sp.t_min_lo = cfg.tmin_range->first;
    sp.t_min_hi = cfg.tmin_range->second;
  } else {
    sp.t_min_lo = 1e-1 * t_small;
    sp.t_min_hi = 1e1 * t_small;
  }
  if (cfg.tmax_range) {
    sp.t_max_lo = cfg.tmax_range->first;
    sp.t_max_hi = cfg.tmax_range->second;
  } else {
    sp.t_max_lo = 1e-1 * t_large;
    sp.t_max_hi = 1e1 * t_large;
  }
  return sp;
}

StabilizerKind to_kind(StabilizerChoice c) {
  return c == StabilizerChoice::L2 ? StabilizerKind::SecondDerivLog
                                   : StabilizerKind::Identity;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  CommonArgs common;
  bool figure1 = false;
  std::vector<double> a, theta, sparam;
  std::size_t m = 64;
  std::string s_range, out;
  double sigma = 0.0;
  bool sigma_column = false;
  std::uint64_t seed = 0;
};

int run_simulate(const CLI::App* cmd, const SimulateArgs& args) {
  RunConfig cfg = merge_config(cmd, args.common);
  if (cmd->count("--sigma")) cfg.sigma = args.sigma;
  if (cmd->count("--sigma-column")) cfg.sigma_column = true;
  if (cmd->count("--seed")) cfg.seed = args.seed;

  auto [s_lo, s_hi] = cmd->count("--s-range")
                          ? parse_range(args.s_range, "--s-range")
                          : std::pair{1e-2, 1e2};
  if (args.m < 2) throw DomainError("simulate: need --m >= 2");
  const Vector s = log_spaced(s_lo, s_hi, args.m);

  json meta;
  Vector g;
  const bool mixture_flags =
      !args.a.empty() || !args.theta.empty() || !args.sparam.empty();
  if (args.figure1) {
    if (mixture_flags) {
      throw ParseError("simulate: --figure1 excludes --a/--theta/--S");
    }
    if (cfg.kernel != KernelKind::LaplaceExp) {
      throw ParseError("simulate: --figure1 is a laplace-kernel pair");
    }
    g.resize(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) g[j] = figure1_image(s[j]);
    meta["figure1"] = true;
  } else {
    if (!mixture_flags) {
      throw ParseError("simulate: provide --a/--theta/--S or --figure1");
    }
    if (args.a.size() != args.theta.size() ||
        args.a.size() != args.sparam.size()) {
      throw ParseError("simulate: --a/--theta/--S must have equal lengths");
    }
    MixtureSpec spec;
    for (std::size_t i = 0; i < args.a.size(); ++i) {
      spec.components.push_back({args.a[i], args.theta[i], args.sparam[i]});
    }
    spec.validate();
    g = forward_transform(spec, cfg.kernel, s);
    meta["mixture"] = {{"a", args.a}, {"theta", args.theta}, {"s_param", args.sparam}};
  }

  const double sigma = cfg.sigma.value_or(0.0);
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw DomainError("simulate: sigma must be >= 0");
  }
  SampledData data;
  data.s_points = s;
  if (sigma > 0.0) {
    data.g = add_noise(g, sigma, cfg.seed);
    data.sigma_scalar = sigma;
    data.seed = cfg.seed;
    data.rng_algorithm = kRngAlgorithm;
    meta["seed"] = cfg.seed;
    meta["rng_algorithm"] = kRngAlgorithm;
    if (cfg.sigma_column) data.sigma_points.assign(s.size(), sigma);
  } else {
    data.g = std::move(g);
    if (cfg.sigma_column) {
      throw ParseError("simulate: --sigma-column needs --sigma > 0");
    }
  }
  meta["kernel"] = kernel_name(cfg.kernel);
  meta["m"] = args.m;
  meta["s_range"] = {s_lo, s_hi};
  meta["sigma"] = sigma;
  meta["sigma_column"] = cfg.sigma_column;

  fs::create_directories(cfg.out_dir);
  const fs::path out = cmd->count("--out")
                           ? fs::path(args.out)
                           : fs::path(cfg.out_dir) / "dataset.csv";
  write_dataset_csv(out, data);
  write_text(out.string() + ".meta.json", meta.dump(2) + "\n");
  std::cout << "wrote " << out.string() << " (" << data.size() << " rows)\n";
  return 0;
}

// ------------------------------------------------------------------ invert

struct InvertArgs {
  CommonArgs common;
  std::string dataset;
};

json candidate_json(const Candidate& best, const SearchResult& r,
                    const ResidualStats& rs) {
  json j;
  j["n"] = best.n;
  j["t_min"] = best.t_min;
  j["t_max"] = best.t_max;
  j["alpha"] = best.alpha;
  j["gcv"] = best.score;
  j["alpha_flag"] = alpha_flag_name(r.solution.alpha_flag);
  j["effective_dof"] = r.solution.effective_dof;
  j["residual_norm"] = r.solution.residual_norm;
  j["seminorm"] = r.solution.seminorm;
  j["evaluations"] = r.evaluations;
  j["residual_mean"] = rs.mean;
  j["residual_std"] = rs.std;
  j["residual_lag1_autocorr"] = rs.lag1_autocorr;
  return j;
}

int run_invert(const CLI::App* cmd, const InvertArgs& args) {
  const RunConfig cfg = merge_config(cmd, args.common);
  const SampledData data = read_dataset_csv(args.dataset);
  const SearchSpace space = make_space(cfg, data);

  const bool want_id = cfg.stabilizer != StabilizerChoice::L2;
  const bool want_l2 = cfg.stabilizer != StabilizerChoice::Identity;

  fs::create_directories(cfg.out_dir);
  json report;
  report["dataset"] = args.dataset;
  report["kernel"] = kernel_name(cfg.kernel);
  json stabs = json::object();
  json files = json::object();

  std::optional<SearchResult> res_id, res_l2;
  double wall_total = 0.0;
  for (const StabilizerKind kind :
       {StabilizerKind::Identity, StabilizerKind::SecondDerivLog}) {
    if (kind == StabilizerKind::Identity ? !want_id : !want_l2) continue;
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult r = search(data, cfg.kernel, kind, space);
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
    wall_total += dt;

    const char* sname = stabilizer_name(kind);
    std::printf(
        "search %-8s best n=%zu t=[%.4g, %.4g] alpha=%.4e gcv=%.6e "
        "(%zu evaluations, %.2f s)\n",
        sname, r.best.n, r.best.t_min, r.best.t_max, r.best.alpha,
        r.best.score, r.evaluations, dt);

    const KernelMatrix km =
        assemble_kernel(r.solution.grid, cfg.kernel, data.s_points);
    const ResidualStats rs = residual_stats(km, r.solution.f, data.g);
    Vector fit(data.size());
    for (std::size_t j = 0; j < fit.size(); ++j) {
      fit[j] = rs.residuals[j] + data.g[j];
    }
    const std::string res_name = std::string("residuals_") + sname + ".csv";
    write_table_csv(fs::path(cfg.out_dir) / res_name,
                    {"s", "g", "fit", "residual"},
                    {data.s_points, data.g, fit, rs.residuals});
    files[std::string("residuals_") + sname] = res_name;
    stabs[sname] = candidate_json(r.best, r, rs);

    (kind == StabilizerKind::Identity ? res_id : res_l2).emplace(std::move(r));
  }

  if (want_id && want_l2) {
    const DisagreementReport d = disagreement(
        res_id->solution, res_l2->solution, cfg.threshold_frac);
    write_table_csv(fs::path(cfg.out_dir) / "solution.csv",
                    {"t", "f_identity", "f_l2"},
                    {d.reference_grid, d.f_identity, d.f_l2});
    json regions = json::array();
    for (const auto& [lo, hi] : d.flagged_regions) regions.push_back({lo, hi});
    report["disagreement"] = {{"sum_sq", d.sum_sq},
                              {"threshold_frac", cfg.threshold_frac},
                              {"flagged_regions", regions}};
  } else {
    const RegularizedSolution& sol =
        want_l2 ? res_l2->solution : res_id->solution;
    write_table_csv(fs::path(cfg.out_dir) / "solution.csv",
                    {"t", std::string("f_") + stabilizer_name(sol.stabilizer)},
                    {sol.grid.nodes, sol.f});
  }
  files["solution"] = "solution.csv";

  const RegularizedSolution& peak_sol =
      want_l2 ? res_l2->solution : res_id->solution;
  json peaks = json::array();
  for (const Peak& p :
       find_peaks(peak_sol.f, peak_sol.grid, cfg.min_prominence_frac)) {
    peaks.push_back({{"t", p.t}, {"height", p.height}});
  }
  report["peaks"] = peaks;
  report["peaks_from"] =
      std::string("f_") + stabilizer_name(peak_sol.stabilizer);

  report["stabilizers"] = stabs;
  report["files"] = files;
  write_text(fs::path(cfg.out_dir) / "report.json", report.dump(2) + "\n");
  std::printf("wall time: %.2f s\n", wall_total);
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "report.json").string()
            << "\n";
  return 0;
}

// ----------------------------------------------------------------- gcv-map

struct GcvMapArgs {
  CommonArgs common;
  std::string dataset;
  std::size_t n = 0;
  std::size_t grid = 6;
  double alpha = 0.0;
};

int run_gcv_map(const CLI::App* cmd, const GcvMapArgs& args) {
  const RunConfig cfg = merge_config(cmd, args.common);
  if (cfg.stabilizer == StabilizerChoice::Both) {
    throw ParseError("gcv-map: pick one stabilizer (identity or l2)");
  }
  const StabilizerKind kind = to_kind(cfg.stabilizer);
  const SampledData data = read_dataset_csv(args.dataset);
  const SearchSpace space = make_space(cfg, data);
  if (args.grid < 2) throw DomainError("gcv-map: need --grid >= 2");

  Vector tmins = log_spaced(space.t_min_lo, space.t_min_hi, args.grid);
  Vector tmaxs = log_spaced(space.t_max_lo, space.t_max_hi, args.grid);
  tmins.erase(std::unique(tmins.begin(), tmins.end()), tmins.end());
  tmaxs.erase(std::unique(tmaxs.begin(), tmaxs.end()), tmaxs.end());

  Vector col_tmin, col_tmax, col_alpha, col_gcv;
  for (const double a : tmins) {
    for (const double b : tmaxs) {
      double alpha_star = 0.0, score = 0.0;
      if (cmd->count("--alpha")) {
        if (!(args.alpha > 0.0)) {
          throw DomainError("gcv-map: --alpha must be positive");
        }
        if (std::log10(b / a) < space.min_decades - 1e-12) continue;
        try {
          const PreparedSystem sys =
              prepare_system(data, cfg.kernel, kind, args.n, a, b);
          alpha_star = args.alpha;
          score = gcv_score(sys.factors, sys.rhs, args.alpha);
        } catch (const DomainError&) {
          continue;
        } catch (const RankError&) {
          continue;
        } catch (const ConvergenceError&) {
          continue;
        }
      } else {
        std::tie(alpha_star, score) = evaluate_candidate(
            data, cfg.kernel, kind, args.n, a, b, space.min_decades);
        if (!std::isfinite(score)) continue;  // infeasible pairs: no row
      }
      col_tmin.push_back(a);
      col_tmax.push_back(b);
      col_alpha.push_back(alpha_star);
      col_gcv.push_back(score);
    }
  }

  fs::create_directories(cfg.out_dir);
  const fs::path out = fs::path(cfg.out_dir) / "gcv_map.csv";
  write_table_csv(out, {"t_min", "t_max", "alpha_star", "gcv"},
                  {col_tmin, col_tmax, col_alpha, col_gcv});
  std::cout << "wrote " << out.string() << " (" << col_tmin.size()
            << " rows)\n";
  return 0;
}

// -------------------------------------------------------------- pair-check

int run_pair_check() {
  const Vector s_values = log_spaced(1e-2, 1e2, 10);
  double max_rel = 0.0;
  std::printf("%-14s %-24s %-24s %s\n", "s", "analytic", "numeric", "rel_err");
  for (const double s : s_values) {
    // e^{-st} caps the integrand's slow t^{-3/2} tail; 100/s is far past
    // anything that could move the value at 1e-8.
    const double numeric = integrate_log_trap(
        [&](double t) {
          return kernel_value(KernelKind::LaplaceExp, s, t) * figure1_density(t);
        },
        1e-4, 100.0 / s, 1e-8);
    const double analytic = figure1_image(s);
    const double rel = std::abs(numeric - analytic) / std::abs(analytic);
    max_rel = std::max(max_rel, rel);
    std::printf("%-14.6g %-24.17g %-24.17g %.3e\n", s, analytic, numeric, rel);
  }
  std::printf("max relative error: %.3e (gate 1e-5)\n", max_rel);
  return max_rel < 1e-5 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized inversion of exponential-kernel integral equations"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Generate a synthetic dataset");
  add_common(sim_cmd, sim.common, /*search_flags=*/false);
  sim_cmd->add_flag("--figure1", sim.figure1,
                    "Closed-form benchmark pair instead of a mixture");
  sim_cmd->add_option("--a", sim.a, "Mixture amplitudes")->delimiter(',');
  sim_cmd->add_option("--theta", sim.theta, "Mixture locations")->delimiter(',');
  sim_cmd->add_option("--S", sim.sparam, "Mixture sharpness values")->delimiter(',');
  sim_cmd->add_option("--m", sim.m, "Number of samples (default 64)");
  sim_cmd->add_option("--s-range", sim.s_range,
                      "lo:hi sampling range (default 1e-2:1e2)");
  sim_cmd->add_option("--sigma", sim.sigma, "Noise standard deviation");
  sim_cmd->add_flag("--sigma-column", sim.sigma_column,
                    "Also write a per-point sigma column");
  sim_cmd->add_option("--seed", sim.seed, "Noise seed (default 0)");
  sim_cmd->add_option("--out", sim.out,
                      "Dataset path (default <out-dir>/dataset.csv)");

  InvertArgs inv;
  CLI::App* inv_cmd = app.add_subcommand(
      "invert", "Search discretization and regularization, write solutions");
  inv_cmd->add_option("dataset", inv.dataset, "Input CSV (s,g[,sigma])")
      ->required();
  add_common(inv_cmd, inv.common, /*search_flags=*/true);

  GcvMapArgs gmap;
  CLI::App* map_cmd = app.add_subcommand(
      "gcv-map", "Export the objective surface over (t_min, t_max)");
  map_cmd->add_option("dataset", gmap.dataset, "Input CSV (s,g[,sigma])")
      ->required();
  add_common(map_cmd, gmap.common, /*search_flags=*/true);
  map_cmd->add_option("--n", gmap.n, "Fixed grid size")->required();
  map_cmd->add_option("--grid", gmap.grid, "Axis resolution (default 6)");
  map_cmd->add_option("--alpha", gmap.alpha,
                      "Score at this fixed alpha instead of minimizing");

  CLI::App* pair_cmd = app.add_subcommand(
      "pair-check", "Verify the forward oracle against the analytic image");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(sim_cmd)) return run_simulate(sim_cmd, sim);
    if (app.got_subcommand(inv_cmd)) return run_invert(inv_cmd, inv);
    if (app.got_subcommand(map_cmd)) return run_gcv_map(map_cmd, gmap);
    if (app.got_subcommand(pair_cmd)) return run_pair_check();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
