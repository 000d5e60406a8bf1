#include "adaptik/config.hpp"

#include <fstream>
#include <set>

#include "adaptik/errors.hpp"
#include "json.hpp"

namespace adaptik {

namespace {

using nlohmann::json;

std::pair<double, double> parse_pair(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(std::string("config: ") + key +
                     " must be a two-element numeric array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

const char* stabilizer_choice_name(StabilizerChoice c) {
  switch (c) {
    case StabilizerChoice::Identity: return "identity";
    case StabilizerChoice::L2: return "l2";
    case StabilizerChoice::Both: return "both";
  }
  return "unknown";
}

StabilizerChoice parse_stabilizer_choice(const std::string& name) {
  if (name == "identity") return StabilizerChoice::Identity;
  if (name == "l2") return StabilizerChoice::L2;
  if (name == "both") return StabilizerChoice::Both;
  throw ParseError("config: unknown stabilizer \"" + name +
                   "\" (expected identity, l2, or both)");
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["kernel"] = kernel_name(c.kernel);
  j["stabilizer"] = stabilizer_choice_name(c.stabilizer);
  j["n_ladder"] = c.n_ladder;
  if (c.tmin_range) j["tmin_range"] = {c.tmin_range->first, c.tmin_range->second};
  if (c.tmax_range) j["tmax_range"] = {c.tmax_range->first, c.tmax_range->second};
  j["min_decades"] = c.min_decades;
  if (c.sigma) j["sigma"] = *c.sigma;
  j["sigma_column"] = c.sigma_column;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["threshold_frac"] = c.threshold_frac;
  j["min_prominence_frac"] = c.min_prominence_frac;
  return j.dump(2) + "\n";
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  static const std::set<std::string> known{
      "kernel",      "stabilizer",   "n_ladder",
      "tmin_range",  "tmax_range",   "min_decades",
      "sigma",       "sigma_column", "seed",
      "out_dir",     "threshold_frac", "min_prominence_frac"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ParseError("config: unknown key \"" + key + "\"");
    }
  }

  RunConfig c;
  try {
    if (j.contains("kernel")) c.kernel = parse_kernel_name(j["kernel"].get<std::string>());
    if (j.contains("stabilizer")) {
      c.stabilizer = parse_stabilizer_choice(j["stabilizer"].get<std::string>());
    }
    if (j.contains("n_ladder")) {
      c.n_ladder = j["n_ladder"].get<std::vector<std::size_t>>();
    }
    if (j.contains("tmin_range")) c.tmin_range = parse_pair(j["tmin_range"], "tmin_range");
    if (j.contains("tmax_range")) c.tmax_range = parse_pair(j["tmax_range"], "tmax_range");
    if (j.contains("min_decades")) c.min_decades = j["min_decades"].get<double>();
    if (j.contains("sigma")) c.sigma = j["sigma"].get<double>();
    if (j.contains("sigma_column")) c.sigma_column = j["sigma_column"].get<bool>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("threshold_frac")) c.threshold_frac = j["threshold_frac"].get<double>();
    if (j.contains("min_prominence_frac")) {
      c.min_prominence_frac = j["min_prominence_frac"].get<double>();
    }
  } catch (const json::type_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open config: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

}  // namespace adaptik
