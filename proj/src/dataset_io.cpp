#include "adaptik/dataset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "adaptik/errors.hpp"

namespace adaptik {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) {
    throw ParseError("cannot open for writing: " + path.string());
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double parse_field(std::string_view field, const std::filesystem::path& path,
                   std::size_t line_no, std::size_t column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    std::ostringstream msg;
    msg << path.string() << ":" << line_no << ": column " << column
        << ": expected a number, got \"" << std::string(field) << "\"";
    throw ParseError(msg.str());
  }
  return v;
}

}  // namespace

void write_dataset_csv(const std::filesystem::path& path,
                       const SampledData& data) {
  data.validate();
  std::ofstream out = open_out(path);
  const bool has_sigma = !data.sigma_points.empty();
  out << (has_sigma ? "s,g,sigma\n" : "s,g\n");
  for (std::size_t j = 0; j < data.size(); ++j) {
    out << format_double(data.s_points[j]) << ',' << format_double(data.g[j]);
    if (has_sigma) out << ',' << format_double(data.sigma_points[j]);
    out << '\n';
  }
  if (!out) throw ParseError("write failed: " + path.string());
}

SampledData read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open: " + path.string());
  }

  SampledData data;
  std::size_t columns = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view whole = trim(line);
    if (whole.empty() || whole.front() == '#') continue;

    const std::vector<std::string_view> fields = split_fields(line);
    if (columns == 0) {  // header
      if (fields.size() == 2 && fields[0] == "s" && fields[1] == "g") {
        columns = 2;
      } else if (fields.size() == 3 && fields[0] == "s" && fields[1] == "g" &&
                 fields[2] == "sigma") {
        columns = 3;
      } else {
        std::ostringstream msg;
        msg << path.string() << ":" << line_no
            << ": expected header \"s,g\" or \"s,g,sigma\"";
        throw ParseError(msg.str());
      }
      continue;
    }

    if (fields.size() != columns) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected " << columns
          << " fields, got " << fields.size();
      throw ParseError(msg.str());
    }
    data.s_points.push_back(parse_field(fields[0], path, line_no, 1));
    data.g.push_back(parse_field(fields[1], path, line_no, 2));
    if (columns == 3) {
      data.sigma_points.push_back(parse_field(fields[2], path, line_no, 3));
    }
  }

  if (columns == 0) {
    throw ParseError(path.string() + ": no header line found");
  }
  data.validate();
  return data;
}

void write_table_csv(const std::filesystem::path& path,
                     const std::vector<std::string>& header,
                     const std::vector<Vector>& columns) {
  if (header.size() != columns.size() || header.empty()) {
    throw DomainError("write_table_csv: header/column count mismatch");
  }
  const std::size_t rows = columns.front().size();
  for (const Vector& c : columns) {
    if (c.size() != rows) {
      throw DomainError("write_table_csv: ragged columns");
    }
  }
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << format_double(columns[i][r]);
    }
    out << '\n';
  }
  if (!out) throw ParseError("write failed: " + path.string());
}

}  // namespace adaptik
