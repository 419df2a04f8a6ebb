#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "varbound/bounds.hpp"
#include "varbound/core.hpp"
#include "varbound/experiments.hpp"
#include "varbound/gen.hpp"
#include "varbound/io.hpp"
#include "varbound/oracle.hpp"
#include "varbound/solver.hpp"

// Exit codes: 0 success, 1 input/config error, 2 oracle mismatch,
// 3 enumeration width over the limit.

namespace {

using namespace varbound;

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    std::size_t value = 0;
    try {
      value = std::stoull(item);
    } catch (...) {
      throw std::invalid_argument("--n-list: bad entry '" + item + "'");
    }
    if (value < 1) throw std::invalid_argument("--n-list: entries must be >= 1");
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("--n-list: empty");
  return out;
}

InstanceFormat parse_format(const std::string& text) {
  if (text == "json") return InstanceFormat::json;
  if (text == "csv") return InstanceFormat::csv;
  return InstanceFormat::autodetect;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

GeneratorSpec spec_from_string(const std::string& text,
                               const std::optional<std::uint64_t>& seed) {
  GeneratorSpec spec = parse_generator_spec(text);
  if (seed) return GeneratorSpec(spec.center, spec.radius, *seed);
  return spec;
}

int run_solve(const std::string& path, const std::string& format,
              bool oracle_check, bool json_out) {
  const Instance inst = read_instance_file(path, parse_format(format));
  const SolveResult res = solve_max_variance(inst);

  bool oracle_ok = true;
  double oracle_max = 0.0;
  if (oracle_check) {
    if (inst.size() > 25) {
      throw std::invalid_argument("--oracle-check needs n <= 25");
    }
    const OracleResult ref = brute_force_max(inst);
    oracle_max = ref.max_variance;
    const double recomputed = variance_direct(inst, res.argmax_signs);
    oracle_ok = close_rel(res.max_variance, ref.max_variance, 1e-9) &&
                close_rel(recomputed, ref.max_variance, 1e-9);
  }

  if (json_out) {
    nlohmann::ordered_json j;
    j["max_variance"] = res.max_variance;
    std::vector<int> signs(res.argmax_signs.signs.begin(),
                           res.argmax_signs.signs.end());
    j["argmax"] = signs;
    j["omega_observed"] = res.omega_observed;
    j["m"] = res.schedule_points;
    j["vertices_examined"] = res.vertices_examined;
    j["wall_time_seconds"] = res.wall_time_seconds;
    if (oracle_check) {
      j["oracle_max_variance"] = oracle_max;
      j["oracle_agreement"] = oracle_ok;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "max_variance " << format_double(res.max_variance) << '\n';
    std::cout << "argmax";
    for (std::int8_t s : res.argmax_signs.signs) {
      std::cout << (s > 0 ? " +1" : " -1");
    }
    std::cout << '\n';
    std::cout << "omega_observed " << res.omega_observed << '\n';
    std::cout << "m " << res.schedule_points << '\n';
    std::cout << "vertices_examined " << res.vertices_examined << '\n';
    std::cout << "wall_time_seconds " << format_double(res.wall_time_seconds)
              << '\n';
    if (oracle_check) {
      std::cout << "oracle_max_variance " << format_double(oracle_max)
                << '\n'
                << "oracle_agreement " << (oracle_ok ? "yes" : "NO") << '\n';
    }
  }

  if (oracle_check && !oracle_ok) {
    std::cerr << "error: solver disagrees with brute-force oracle\n";
    return 2;
  }
  return 0;
}

int run_gen(const std::string& spec_text,
            const std::optional<std::uint64_t>& seed, std::size_t n,
            const std::string& out_path, const std::string& format) {
  const GeneratorSpec spec = spec_from_string(spec_text, seed);
  const Instance inst = sample_instance(spec, n);
  const bool csv = format == "csv";
  if (out_path.empty()) {
    if (csv) {
      write_instance_csv(std::cout, inst);
    } else {
      write_instance_json(std::cout, inst);
    }
  } else {
    std::ofstream out = open_output(out_path);
    if (csv) {
      write_instance_csv(out, inst);
    } else {
      write_instance_json(out, inst);
    }
  }
  return 0;
}

int run_omega(const std::string& path, const std::string& spec_text,
              const std::optional<std::uint64_t>& seed, std::size_t n) {
  std::optional<Instance> inst;
  if (!path.empty() && !spec_text.empty()) {
    throw std::invalid_argument("omega: give either a file or --spec, not both");
  }
  if (!path.empty()) {
    inst = read_instance_file(path);
  } else if (!spec_text.empty()) {
    if (n < 1) throw std::invalid_argument("omega: --spec needs --n >= 1");
    inst = sample_instance(spec_from_string(spec_text, seed), n);
  } else {
    throw std::invalid_argument("omega: need an instance file or --spec");
  }
  // Schedule + width only; no vertex enumeration, so this is safe on
  // instances whose solve would be astronomically large.
  const SweepSchedule sched = build_schedule(*inst);
  std::cout << "omega " << max_active_width(sched) << '\n'
            << "m " << sched.point_count() << '\n';
  return 0;
}

int run_experiment_cmd(const std::string& spec_text,
                       const std::string& n_list, std::size_t trials,
                       std::uint64_t master_seed, const std::string& mode,
                       std::size_t omega_cap, const std::string& out_csv,
                       const std::string& out_json, unsigned threads) {
  if (threads > 0) {
    setenv("VARBOUND_THREADS", std::to_string(threads).c_str(), 1);
  }
  const GeneratorSpec spec = parse_generator_spec(spec_text);
  const ExperimentConfig config{
      spec,
      parse_n_list(n_list),
      trials,
      master_seed,
      mode == "solve_and_time" ? ExperimentMode::solve_and_time
                               : ExperimentMode::omega_only,
      omega_cap};
  const std::vector<ExperimentRecord> records = run_experiment(config);

  if (out_csv.empty()) {
    write_csv(std::cout, records);
  } else {
    std::ofstream out = open_output(out_csv);
    write_csv(out, records);
  }
  if (!out_json.empty()) {
    std::ofstream out = open_output(out_json);
    out << summary_json(config, records).dump(2) << '\n';
  }
  return 0;
}

int run_bounds(const std::string& n_list, double L, double gamma, double eps,
               double c) {
  const BoundParams params(L, gamma, eps);
  std::cout << "alpha " << format_double(params.alpha) << '\n';
  std::cout << "n k_n expected_omega_bound expected_two_omega_bound "
               "tail_omega_bound zeta_n\n";
  for (std::size_t n : parse_n_list(n_list)) {
    std::cout << n << ' ' << format_double(k_n(n)) << ' '
              << format_double(expected_omega_bound(n)) << ' '
              << format_double(expected_two_omega_bound(n)) << ' '
              << format_double(tail_omega_bound(n)) << ' '
              << format_double(zeta_n(n, params.alpha, c)) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "varbound: exact sample-variance maximization over interval data, "
      "with instance generators, theory bounds and a Monte-Carlo harness"};
  app.require_subcommand(1);

  std::string solve_path, solve_format = "auto";
  bool oracle_check = false, json_out = false;
  CLI::App* solve = app.add_subcommand(
      "solve", "maximize the sample variance over an instance file");
  solve->add_option("path", solve_path, "instance file (JSON or CSV)")
      ->required();
  solve->add_option("--format", solve_format, "input format (default: sniff)")
      ->check(CLI::IsMember({"json", "csv"}));
  solve->add_flag("--oracle-check", oracle_check,
                  "also run the 2^n brute force (n <= 25) and compare");
  solve->add_flag("--json-out", json_out, "emit the result as JSON");

  std::vector<std::string> gen_spec_words;
  std::optional<std::uint64_t> gen_seed;
  std::size_t gen_n = 0;
  std::string gen_out, gen_format = "json";
  CLI::App* gen =
      app.add_subcommand("gen", "sample an instance from a generator spec");
  gen->add_option("spec", gen_spec_words,
                  "e.g. center=uniform:0,1 radius=exp:1 seed=42")
      ->required()
      ->expected(-1);
  gen->add_option("--n", gen_n, "number of intervals")->required();
  gen->add_option("--seed", gen_seed, "overrides seed= in the spec");
  gen->add_option("--out", gen_out, "output path (default: stdout)");
  gen->add_option("--format", gen_format, "output format (default: json)")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string omega_path, omega_spec;
  std::optional<std::uint64_t> omega_seed;
  std::size_t omega_n = 0;
  CLI::App* omega = app.add_subcommand(
      "omega", "report enumeration width and schedule size, never solving");
  omega->add_option("path", omega_path, "instance file");
  omega->add_option("--spec", omega_spec, "generator spec (needs --n)");
  omega->add_option("--n", omega_n, "number of intervals for --spec");
  omega->add_option("--seed", omega_seed, "overrides seed= in the spec");

  std::string exp_spec, exp_n_list, exp_mode = "omega_only";
  std::string exp_out_csv, exp_out_json;
  std::size_t exp_trials = 1, exp_omega_cap = 62;
  std::uint64_t exp_seed = 0;
  unsigned exp_threads = 0;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "seeded Monte-Carlo runs with CSV/JSON output");
  experiment->add_option("--spec", exp_spec, "generator spec")->required();
  experiment->add_option("--n-list", exp_n_list, "comma-separated sizes")
      ->required();
  experiment->add_option("--trials", exp_trials, "trials per size")
      ->required();
  experiment->add_option("--seed", exp_seed, "master seed (default 0)");
  experiment->add_option("--mode", exp_mode, "omega_only|solve_and_time")
      ->check(CLI::IsMember({"omega_only", "solve_and_time"}));
  experiment->add_option("--omega-cap", exp_omega_cap,
                         "skip solving above this width (default 62)");
  experiment->add_option("--out-csv", exp_out_csv,
                         "CSV path (default: stdout)");
  experiment->add_option("--out-json", exp_out_json, "JSON summary path");
  experiment->add_option("--threads", exp_threads,
                         "worker count (same as VARBOUND_THREADS)");

  std::string bounds_n_list;
  double bounds_L = 1.0, bounds_gamma = 2.0, bounds_eps = 1.0;
  double bounds_c = std::numbers::log2e;  // 1/ln 2
  CLI::App* bounds =
      app.add_subcommand("bounds", "tabulate the theory curves");
  bounds->add_option("--n-list", bounds_n_list, "comma-separated sizes")
      ->required();
  bounds->add_option("--L", bounds_L, "center density bound (default 1)");
  bounds->add_option("--gamma", bounds_gamma,
                     "radius moment value (default 2)");
  bounds->add_option("--eps", bounds_eps, "moment order offset (default 1)");
  bounds->add_option("--c", bounds_c, "zeta_n constant (default 1/ln 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*solve) {
      return run_solve(solve_path, solve_format, oracle_check, json_out);
    }
    if (*gen) {
      std::string joined;
      for (const std::string& w : gen_spec_words) {
        if (!joined.empty()) joined += ' ';
        joined += w;
      }
      return run_gen(joined, gen_seed, gen_n, gen_out, gen_format);
    }
    if (*omega) {
      return run_omega(omega_path, omega_spec, omega_seed, omega_n);
    }
    if (*experiment) {
      return run_experiment_cmd(exp_spec, exp_n_list, exp_trials, exp_seed,
                                exp_mode, exp_omega_cap, exp_out_csv,
                                exp_out_json, exp_threads);
    }
    if (*bounds) {
      return run_bounds(bounds_n_list, bounds_L, bounds_gamma, bounds_eps,
                        bounds_c);
    }
  } catch (const WidthError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "omega " << e.omega << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
