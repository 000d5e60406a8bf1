#include <cfloat>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "adaptik/config.hpp"
#include "adaptik/dataset_io.hpp"
#include "adaptik/errors.hpp"
#include "doctest.h"

using namespace adaptik;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const char* name)
      : path(fs::temp_directory_path() / name) {}
  ~TempFile() {
    std::error_code ec;
    fs::remove(path, ec);
  }
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("format_double round-trips awkward values") {
  for (double v : {1.0 / 3.0, 0.1, 1e-308, DBL_MAX, 5e-324, -2.718281828459045,
                   6.02214076e23, 1234567890.123456789, 0.0, -7.25}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("dataset csv round trip is bit exact") {
  SampledData d;
  d.s_points = {1e-308, 0.1, 1.0 / 3.0, 0.5, DBL_MAX};
  d.g = {-1.0 / 3.0, 5e-324, -1.7976931348623157e308, 0.1, 42.125};

  SUBCASE("without sigma column") {
    TempFile f("adaptik_io_roundtrip_plain.csv");
    write_dataset_csv(f.path, d);
    const SampledData back = read_dataset_csv(f.path);
    CHECK(back.s_points == d.s_points);
    CHECK(back.g == d.g);
    CHECK(back.sigma_points.empty());

    const std::string text = read_text(f.path);
    CHECK(text.substr(0, 4) == "s,g\n");
    CHECK(text.find('\r') == std::string::npos);  // LF endings
  }

  SUBCASE("with sigma column") {
    d.sigma_points = {1.0 / 3.0, 0.1, 5e-324, 2.5, 1e308};
    TempFile f("adaptik_io_roundtrip_sigma.csv");
    write_dataset_csv(f.path, d);
    const SampledData back = read_dataset_csv(f.path);
    CHECK(back.s_points == d.s_points);
    CHECK(back.g == d.g);
    CHECK(back.sigma_points == d.sigma_points);
    CHECK(read_text(f.path).substr(0, 10) == "s,g,sigma\n");
  }
}

TEST_CASE("dataset reader tolerates comments, blanks, CRLF, padding") {
  TempFile f("adaptik_io_tolerant.csv");
  write_text(f.path,
             "# produced by hand\r\n"
             "\r\n"
             "s,g\r\n"
             " 0.5 ,  1.25\r\n"
             "# midway comment\n"
             "\n"
             "2.0,-0.75\r\n");
  const SampledData d = read_dataset_csv(f.path);
  REQUIRE(d.size() == 2);
  CHECK(d.s_points[0] == 0.5);
  CHECK(d.s_points[1] == 2.0);
  CHECK(d.g[0] == 1.25);
  CHECK(d.g[1] == -0.75);
}

TEST_CASE("dataset reader names the offending line and column") {
  TempFile f("adaptik_io_badcell.csv");
  write_text(f.path, "s,g\n1.0,2.0\n3.0,oops\n");
  try {
    read_dataset_csv(f.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":3:") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
    CHECK(msg.find("oops") != std::string::npos);
  }
}

TEST_CASE("dataset reader rejects structural problems") {
  TempFile f("adaptik_io_structural.csv");

  write_text(f.path, "time,value\n1,2\n");
  CHECK_THROWS_AS(read_dataset_csv(f.path), ParseError);

  write_text(f.path, "s,g\n1.0,2.0,3.0\n");
  CHECK_THROWS_AS(read_dataset_csv(f.path), ParseError);  // ragged row

  write_text(f.path, "s,g,sigma\n1.0,2.0\n");
  CHECK_THROWS_AS(read_dataset_csv(f.path), ParseError);

  write_text(f.path, "# only comments\n\n");
  CHECK_THROWS_AS(read_dataset_csv(f.path), ParseError);  // no header

  CHECK_THROWS_AS(read_dataset_csv(f.path.string() + ".does-not-exist"),
                  ParseError);

  // parses fine but violates the data invariants (s not increasing)
  write_text(f.path, "s,g\n2.0,1.0\n1.0,1.0\n");
  CHECK_THROWS_AS(read_dataset_csv(f.path), DomainError);
}

TEST_CASE("write_table_csv emits aligned columns and rejects ragged input") {
  TempFile f("adaptik_io_table.csv");
  write_table_csv(f.path, {"a", "b"}, {Vector{1.5, 0.25}, Vector{3.0, 4.0}});
  CHECK(read_text(f.path) == "a,b\n1.5,3\n0.25,4\n");

  CHECK_THROWS_AS(write_table_csv(f.path, {"a"}, {Vector{1.0}, Vector{2.0}}),
                  DomainError);
  CHECK_THROWS_AS(write_table_csv(f.path, {}, {}), DomainError);
  CHECK_THROWS_AS(
      write_table_csv(f.path, {"a", "b"}, {Vector{1.0}, Vector{2.0, 3.0}}),
      DomainError);
}

TEST_CASE("config serialization round trip") {
  RunConfig c;  // defaults
  CHECK(parse_config(serialize_config(c)) == c);

  c.kernel = KernelKind::InverseExp;
  c.stabilizer = StabilizerChoice::L2;
  c.n_ladder = {40, 80, 200};
  c.tmin_range = {1e-3, 1e-1};
  c.tmax_range = {1e1, 1e3};
  c.min_decades = 2.0;
  c.sigma = 0.01;
  c.sigma_column = true;
  c.seed = 12345;
  c.out_dir = "runs/out";
  c.threshold_frac = 0.2;
  c.min_prominence_frac = 0.1;
  CHECK(parse_config(serialize_config(c)) == c);

  // serialization is a fixed point
  const std::string text = serialize_config(c);
  CHECK(serialize_config(parse_config(text)) == text);

  // partial configs keep defaults for everything else
  const RunConfig partial = parse_config(R"({"kernel": "nmr"})");
  CHECK(partial.kernel == KernelKind::InverseExp);
  CHECK(partial.stabilizer == RunConfig{}.stabilizer);
  CHECK(partial.n_ladder == RunConfig{}.n_ladder);
  CHECK_FALSE(partial.tmin_range.has_value());
}

TEST_CASE("config parser rejects malformed input") {
  CHECK_THROWS_AS(parse_config("{\"typo_key\": 1}"), ParseError);
  CHECK_THROWS_AS(parse_config("not json at all"), ParseError);
  CHECK_THROWS_AS(parse_config("[1,2,3]"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"stabilizer": "l3"})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"kernel": "fourier"})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"tmin_range": [1.0]})"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"tmin_range": [1.0, 2.0, 3.0]})"),
                  ParseError);
}

TEST_CASE("stabilizer choice names round trip") {
  for (StabilizerChoice c : {StabilizerChoice::Identity, StabilizerChoice::L2,
                             StabilizerChoice::Both}) {
    CHECK(parse_stabilizer_choice(stabilizer_choice_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_stabilizer_choice("tikhonov"), ParseError);
}

TEST_CASE("config file loading") {
  TempFile f("adaptik_io_config.json");
  RunConfig c;
  c.seed = 777;
  c.sigma = 0.05;
  write_text(f.path, serialize_config(c));
  CHECK(load_config_file(f.path) == c);

  CHECK_THROWS_AS(load_config_file(f.path.string() + ".missing"), ParseError);
}
