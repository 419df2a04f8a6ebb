#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "varbound/core.hpp"
#include "varbound/gen.hpp"
#include "varbound/io.hpp"

using namespace varbound;

namespace {

std::uint64_t xorshift(std::uint64_t& s) {
  s ^= s << 13;
  s ^= s >> 7;
  s ^= s << 17;
  return s;
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

Instance roundtrip_json(const Instance& inst) {
  std::ostringstream out;
  write_instance_json(out, inst);
  return parse_instance_json(out.str());
}

Instance roundtrip_csv(const Instance& inst) {
  std::ostringstream out;
  write_instance_csv(out, inst);
  return parse_instance_csv(out.str());
}

void check_same_instance(const Instance& a, const Instance& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(same_bits(a.lower(i), b.lower(i)));
    CHECK(same_bits(a.upper(i), b.upper(i)));
  }
}

}  // namespace

TEST_CASE("format_double prints shortest round-trip forms") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "-0");
  CHECK(format_double(3.0) == "3");
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(1e300) == "1e+300");

  // round-trip through strtod is bit-exact for arbitrary finite doubles
  std::uint64_t state = 0x2545F4914F6CDD1Dull;
  int checked = 0;
  while (checked < 500) {
    const double x = std::bit_cast<double>(xorshift(state));
    if (!std::isfinite(x)) continue;
    const std::string s = format_double(x);
    CHECK(same_bits(std::strtod(s.c_str(), nullptr), x));
    ++checked;
  }
}

TEST_CASE("parse_instance_json accepts the documented shape") {
  const Instance inst =
      parse_instance_json(R"({"lower":[0,10],"upper":[1,11]})");
  REQUIRE(inst.size() == 2);
  CHECK(inst.lower(0) == 0.0);
  CHECK(inst.upper(1) == 11.0);

  // extra keys are ignored, point intervals are fine
  const Instance pt = parse_instance_json(
      R"({"lower":[2.5],"upper":[2.5],"comment":"x"})");
  CHECK(pt.size() == 1);
}

TEST_CASE("parse_instance_json rejects malformed input") {
  CHECK_THROWS_AS(parse_instance_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json("[1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json(R"({"lower":[0]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json(R"({"lower":0,"upper":[1]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json(R"({"lower":["0"],"upper":[1]})"),
                  std::invalid_argument);
  // overflowing literal comes out of the JSON parser as infinity
  CHECK_THROWS_AS(parse_instance_json(R"({"lower":[1e999],"upper":[1e999]})"),
                  std::invalid_argument);
  // length mismatch and inverted bounds are caught by instance validation
  CHECK_THROWS_AS(parse_instance_json(R"({"lower":[0,0],"upper":[1]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json(R"({"lower":[2],"upper":[1]})"),
                  std::invalid_argument);
}

TEST_CASE("parse_instance_csv handles headers, blanks and CRLF") {
  const Instance plain = parse_instance_csv("0,1\n10,11\n");
  REQUIRE(plain.size() == 2);
  CHECK(plain.lower(1) == 10.0);

  const Instance with_header =
      parse_instance_csv("lower,upper\r\n\r\n0.5,1.5\r\n");
  REQUIRE(with_header.size() == 1);
  CHECK(with_header.lower(0) == 0.5);
  CHECK(with_header.upper(0) == 1.5);

  // leading blank lines, interior blanks, spaces around fields, no final
  // newline
  const Instance messy = parse_instance_csv("\n\n -1 , 2 \n\n.5,.75");
  REQUIRE(messy.size() == 2);
  CHECK(messy.lower(0) == -1.0);
  CHECK(messy.upper(1) == 0.75);
}

TEST_CASE("parse_instance_csv rejects malformed rows with line numbers") {
  CHECK_THROWS_AS(parse_instance_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_csv("lower,upper\n"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_instance_csv("lower,upper\n\n1,2\nx,3\n"),
                       doctest::Contains("line 4"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_instance_csv("1,2,3\n"),
                       doctest::Contains("exactly two"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_csv("1\n"), std::invalid_argument);
  // only the first content line may be a header
  CHECK_THROWS_AS(parse_instance_csv("lower,upper\nalso,header\n"),
                  std::invalid_argument);
  // a '+' looks like a data row but the number grammar has no unary plus
  CHECK_THROWS_AS(parse_instance_csv("+1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_csv("2,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_csv("1,inf\n"), std::invalid_argument);
}

TEST_CASE("instance writers round-trip bit-exactly") {
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> lo, hi;
    const std::size_t n = 1 + xorshift(state) % 8;
    for (std::size_t i = 0; i < n; ++i) {
      const double c =
          std::ldexp(static_cast<double>(xorshift(state) >> 11), -40) - 4096.0;
      const double r = std::ldexp(static_cast<double>(xorshift(state) >> 20),
                                  -60);
      lo.push_back(c - r);
      hi.push_back(c + r);
    }
    const Instance inst = Instance::from_bounds(lo, hi);
    check_same_instance(inst, roundtrip_json(inst));
    check_same_instance(inst, roundtrip_csv(inst));
  }

  // signed zero survives both directions
  const Instance zero = Instance::from_bounds({-0.0}, {0.0});
  check_same_instance(zero, roundtrip_json(zero));
  check_same_instance(zero, roundtrip_csv(zero));
}

TEST_CASE("instance writers emit the documented layouts") {
  const Instance inst = Instance::from_bounds({0.0, 10.0}, {1.0, 11.0});

  std::ostringstream csv;
  write_instance_csv(csv, inst);
  CHECK(csv.str() == "lower,upper\n0,1\n10,11\n");

  std::ostringstream json;
  write_instance_json(json, inst);
  CHECK(json.str() ==
        "{\n"
        "  \"lower\": [\n    0.0,\n    10.0\n  ],\n"
        "  \"upper\": [\n    1.0,\n    11.0\n  ]\n"
        "}\n");
}

TEST_CASE("read_instance_file sniffs the format from the content") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path jpath = dir / "varbound_io_test.json";
  const fs::path cpath = dir / "varbound_io_test.csv";

  {
    std::ofstream out(jpath);
    out << "  \n  {\"lower\":[0],\"upper\":[4]}\n";
  }
  {
    std::ofstream out(cpath);
    out << "lower,upper\n0,4\n";
  }

  const Instance from_json = read_instance_file(jpath.string());
  const Instance from_csv = read_instance_file(cpath.string());
  CHECK(from_json.size() == 1);
  CHECK(from_json.upper(0) == 4.0);
  check_same_instance(from_json, from_csv);

  // explicit format overrides the sniff; a JSON body forced through the CSV
  // parser fails
  CHECK(read_instance_file(jpath.string(), InstanceFormat::json).size() == 1);
  CHECK_THROWS_AS(read_instance_file(jpath.string(), InstanceFormat::csv),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS(read_instance_file((dir / "varbound_io_nope").string()),
                       doctest::Contains("cannot read"),
                       std::invalid_argument);

  fs::remove(jpath);
  fs::remove(cpath);
}

TEST_CASE("parse_generator_spec reads key=value tokens in any order") {
  const GeneratorSpec a =
      parse_generator_spec("center=uniform:0,1 radius=exp:1");
  CHECK(a.center.kind == CenterKind::uniform);
  CHECK(a.center.p0 == 0.0);
  CHECK(a.center.p1 == 1.0);
  CHECK(a.radius.kind == RadiusKind::exponential);
  CHECK(a.radius.p0 == 1.0);
  CHECK(a.seed == 0);  // seed is optional

  const GeneratorSpec b = parse_generator_spec(
      "  seed=42\t radius=pareto:2.5,0.125  center=gaussian:-1.5,2.25 ");
  CHECK(b.center.kind == CenterKind::gaussian);
  CHECK(b.center.p0 == -1.5);
  CHECK(b.center.p1 == 2.25);
  CHECK(b.radius.kind == RadiusKind::pareto);
  CHECK(b.radius.p0 == 2.5);
  CHECK(b.radius.p1 == 0.125);
  CHECK(b.seed == 42);

  // repeated keys: the last one wins
  const GeneratorSpec c = parse_generator_spec(
      "center=uniform:0,1 center=power:0.5 radius=const:1");
  CHECK(c.center.kind == CenterKind::power_cdf);
}

TEST_CASE("parse_generator_spec rejects malformed specs") {
  CHECK_THROWS_WITH_AS(parse_generator_spec("radius=exp:1"),
                       doctest::Contains("missing center"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("center=uniform:0,1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("uniform:0,1 radius=exp:1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_generator_spec("center=uniform radius=exp:1"),
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_generator_spec("center=cauchy:0,1 radius=exp:1"),
      doctest::Contains("unknown center kind"), std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("center=uniform:0 radius=exp:1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("center=uniform:0,1 radius=exp:1,2"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("center=uniform:0,1 radius=exp:abc"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_generator_spec("center=uniform:0,1 radius=exp:1 mode=solve"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_generator_spec("center=uniform:0,1 radius=exp:1 seed=-1"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_generator_spec("center=uniform:0,1 radius=exp:1 seed=abc"),
      std::invalid_argument);

  // distribution-level validation fires through the same path
  CHECK_THROWS_AS(parse_generator_spec("center=uniform:1,0 radius=exp:1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("center=gaussian:0,0 radius=exp:1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("center=uniform:0,1 radius=pareto:1,1"),
                  std::invalid_argument);
  // dependent radii require unit-uniform centers
  CHECK_THROWS_AS(
      parse_generator_spec("center=gaussian:0,1 radius=deppow:0.3"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_generator_spec("center=uniform:0,2 radius=deppow:0.3"),
      std::invalid_argument);
  CHECK_NOTHROW(parse_generator_spec("center=uniform:0,1 radius=deppow:0.3"));
}

TEST_CASE("format_generator_spec round-trips every kind") {
  const char* canonical = "center=uniform:0,1 radius=exp:1 seed=0";
  CHECK(format_generator_spec(parse_generator_spec(canonical)) == canonical);

  const std::vector<std::string> specs = {
      "center=uniform:-2,3 radius=const:2.5 seed=7",
      "center=gaussian:-1.5,2.25 radius=pareto:2.5,0.125 seed=1",
      "center=power:0.625 radius=halfgauss:0.75 seed=18446744073709551615",
      "center=uniform:0,1 radius=deppow:0.25 seed=3",
      "center=power:1 radius=exp:3 seed=0",
  };
  for (const std::string& s : specs) {
    const GeneratorSpec spec = parse_generator_spec(s);
    CHECK(format_generator_spec(spec) == s);
    const GeneratorSpec again =
        parse_generator_spec(format_generator_spec(spec));
    CHECK(again.center.kind == spec.center.kind);
    CHECK(same_bits(again.center.p0, spec.center.p0));
    CHECK(same_bits(again.center.p1, spec.center.p1));
    CHECK(again.radius.kind == spec.radius.kind);
    CHECK(same_bits(again.radius.p0, spec.radius.p0));
    CHECK(same_bits(again.radius.p1, spec.radius.p1));
    CHECK(again.seed == spec.seed);
  }
}
