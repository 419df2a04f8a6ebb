#include "varbound/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace varbound {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_real(std::string_view s, const std::string& context) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(context + ": not a number: '" + std::string(s) + "'");
  }
  if (!std::isfinite(value)) {
    fail(context + ": non-finite value: '" + std::string(s) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view s, const std::string& context) {
  s = trim(s);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(context + ": not an unsigned integer: '" + std::string(s) + "'");
  }
  return value;
}

std::vector<double> json_real_array(const nlohmann::json& j,
                                    const char* name) {
  if (!j.is_array()) fail(std::string("instance JSON: ") + name +
                          " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      fail(std::string("instance JSON: ") + name +
           " must contain only numbers");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      fail(std::string("instance JSON: non-finite value in ") + name);
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

Instance parse_instance_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("lower") || !j.contains("upper")) {
    fail("instance JSON: need an object with 'lower' and 'upper' arrays");
  }
  std::vector<double> lower = json_real_array(j["lower"], "lower");
  std::vector<double> upper = json_real_array(j["upper"], "upper");
  return Instance::from_bounds(std::move(lower), std::move(upper));
}

Instance parse_instance_csv(const std::string& text) {
  std::vector<double> lower, upper;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content_line = true;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line(text.data() + pos,
                          (nl == std::string::npos ? text.size() : nl) - pos);
    pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = trim(line);
    if (line.empty()) continue;

    // One header line is allowed: anything whose first character cannot
    // start a number.
    const char c0 = line.front();
    const bool numeric_start =
        (c0 >= '0' && c0 <= '9') || c0 == '-' || c0 == '+' || c0 == '.';
    if (first_content_line && !numeric_start) {
      first_content_line = false;
      continue;
    }
    first_content_line = false;

    const std::string context = "instance CSV line " + std::to_string(line_no);
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos ||
        line.find(',', comma + 1) != std::string_view::npos) {
      fail(context + ": expected exactly two comma-separated fields");
    }
    lower.push_back(parse_real(line.substr(0, comma), context));
    upper.push_back(parse_real(line.substr(comma + 1), context));
  }
  if (lower.empty()) fail("instance CSV: no data rows");
  return Instance::from_bounds(std::move(lower), std::move(upper));
}

Instance read_instance_file(const std::string& path, InstanceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read instance file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (format == InstanceFormat::autodetect) {
    const std::string_view head = trim(text);
    format = (!head.empty() && head.front() == '{') ? InstanceFormat::json
                                                    : InstanceFormat::csv;
  }
  return format == InstanceFormat::json ? parse_instance_json(text)
                                        : parse_instance_csv(text);
}

void write_instance_json(std::ostream& out, const Instance& inst) {
  nlohmann::ordered_json j;
  j["lower"] = std::vector<double>(inst.lowers().begin(), inst.lowers().end());
  j["upper"] = std::vector<double>(inst.uppers().begin(), inst.uppers().end());
  out << j.dump(2) << '\n';
}

void write_instance_csv(std::ostream& out, const Instance& inst) {
  out << "lower,upper\n";
  for (std::size_t i = 0; i < inst.size(); ++i) {
    out << format_double(inst.lower(i)) << ',' << format_double(inst.upper(i))
        << '\n';
  }
}

namespace {

std::vector<double> split_params(std::string_view s,
                                 const std::string& context) {
  std::vector<double> out;
  while (true) {
    const std::size_t comma = s.find(',');
    out.push_back(parse_real(s.substr(0, comma), context));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

CenterDistribution make_center(std::string_view kind,
                               const std::vector<double>& p) {
  const std::string context = "generator spec center '" + std::string(kind) +
                              "'";
  auto arity = [&](std::size_t want) {
    if (p.size() != want) {
      fail(context + ": expected " + std::to_string(want) + " parameter(s)");
    }
  };
  if (kind == "uniform") {
    arity(2);
    return CenterDistribution::uniform(p[0], p[1]);
  }
  if (kind == "gaussian") {
    arity(2);
    return CenterDistribution::gaussian(p[0], p[1]);
  }
  if (kind == "power") {
    arity(1);
    return CenterDistribution::power_cdf(p[0]);
  }
  fail("generator spec: unknown center kind '" + std::string(kind) + "'");
}

RadiusDistribution make_radius(std::string_view kind,
                               const std::vector<double>& p) {
  const std::string context = "generator spec radius '" + std::string(kind) +
                              "'";
  auto arity = [&](std::size_t want) {
    if (p.size() != want) {
      fail(context + ": expected " + std::to_string(want) + " parameter(s)");
    }
  };
  if (kind == "const") {
    arity(1);
    return RadiusDistribution::constant(p[0]);
  }
  if (kind == "exp") {
    arity(1);
    return RadiusDistribution::exponential(p[0]);
  }
  if (kind == "pareto") {
    arity(2);
    return RadiusDistribution::pareto(p[0], p[1]);
  }
  if (kind == "halfgauss") {
    arity(1);
    return RadiusDistribution::half_gaussian(p[0]);
  }
  if (kind == "deppow") {
    arity(1);
    return RadiusDistribution::dependent_power(p[0]);
  }
  fail("generator spec: unknown radius kind '" + std::string(kind) + "'");
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
  std::optional<CenterDistribution> center;
  std::optional<RadiusDistribution> radius;
  std::uint64_t seed = 0;

  std::string_view rest = text;
  while (true) {
    rest = trim(rest);
    if (rest.empty()) break;
    std::size_t space = rest.find_first_of(" \t");
    const std::string_view token =
        rest.substr(0, space == std::string_view::npos ? rest.size() : space);
    rest.remove_prefix(token.size());

    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) {
      fail("generator spec: expected key=value, got '" + std::string(token) +
           "'");
    }
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);

    if (key == "center" || key == "radius") {
      const std::size_t colon = value.find(':');
      if (colon == std::string_view::npos) {
        fail("generator spec: expected <kind>:<params> in '" +
             std::string(token) + "'");
      }
      const std::string_view kind = value.substr(0, colon);
      const std::vector<double> params = split_params(
          value.substr(colon + 1), "generator spec '" + std::string(token) +
                                       "'");
      if (key == "center") {
        center = make_center(kind, params);
      } else {
        radius = make_radius(kind, params);
      }
    } else if (key == "seed") {
      seed = parse_u64(value, "generator spec seed");
    } else {
      fail("generator spec: unknown key '" + std::string(key) + "'");
    }
  }

  if (!center) fail("generator spec: missing center=...");
  if (!radius) fail("generator spec: missing radius=...");
  return GeneratorSpec(*center, *radius, seed);
}

std::string format_generator_spec(const GeneratorSpec& spec) {
  std::string out = "center=";
  out += kind_token(spec.center.kind);
  out += ':';
  out += format_double(spec.center.p0);
  if (param_count(spec.center.kind) == 2) {
    out += ',';
    out += format_double(spec.center.p1);
  }
  out += " radius=";
  out += kind_token(spec.radius.kind);
  out += ':';
  out += format_double(spec.radius.p0);
  if (param_count(spec.radius.kind) == 2) {
    out += ',';
    out += format_double(spec.radius.p1);
  }
  out += " seed=";
  out += std::to_string(spec.seed);
  return out;
}

}  // namespace varbound
