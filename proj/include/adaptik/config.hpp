#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adaptik/kernel.hpp"

namespace adaptik {

enum class StabilizerChoice { Identity, L2, Both };

const char* stabilizer_choice_name(StabilizerChoice c);
StabilizerChoice parse_stabilizer_choice(const std::string& name);

/// Everything a run needs beyond the dataset itself. Endpoint ranges left
/// unset are derived from the data's s-range at run time (reciprocal rule).
/// Precedence: built-in defaults, then a config file, then command-line
/// flags.
struct RunConfig {
  KernelKind kernel = KernelKind::LaplaceExp;
  StabilizerChoice stabilizer = StabilizerChoice::Both;
  std::vector<std::size_t> n_ladder{20, 40, 60, 80, 120, 160, 200};
  std::optional<std::pair<double, double>> tmin_range;
  std::optional<std::pair<double, double>> tmax_range;
  double min_decades = 1.0;
  std::optional<double> sigma;  ///< simulate: noise level (absent or 0 = none)
  bool sigma_column = false;    ///< simulate: also write per-point sigma
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double threshold_frac = 0.1;          ///< disagreement flagging
  double min_prominence_frac = 0.05;    ///< peak detection

  bool operator==(const RunConfig&) const = default;
};

/// JSON round trip; parse(serialize(c)) == c. Unknown keys are rejected
/// (ParseError), so typos do not silently fall back to defaults.
std::string serialize_config(const RunConfig& c);
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::filesystem::path& path);

}  // namespace adaptik
