#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "adaptik/data.hpp"

namespace adaptik {

/// Dataset CSV: header `s,g` or `s,g,sigma`, one row per sample, values
/// printed with 17 significant digits (lossless round trip), LF endings,
/// `#` starting a comment line. Readers reject anything else with a
/// ParseError naming the line and column.
void write_dataset_csv(const std::filesystem::path& path,
                       const SampledData& data);
SampledData read_dataset_csv(const std::filesystem::path& path);

/// Same conventions for generic numeric tables (solutions, residuals,
/// score maps). All columns must share one length.
void write_table_csv(const std::filesystem::path& path,
                     const std::vector<std::string>& header,
                     const std::vector<Vector>& columns);

/// %.17g — the one formatting used for every number we persist.
std::string format_double(double v);

}  // namespace adaptik
