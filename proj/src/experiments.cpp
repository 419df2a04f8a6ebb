#include "varbound/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "varbound/bounds.hpp"
#include "varbound/intgraph.hpp"
#include "varbound/io.hpp"
#include "varbound/solver.hpp"

namespace varbound {

namespace {

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("experiment: need trials >= 1");
  }
  if (config.n_values.empty()) {
    throw std::invalid_argument("experiment: need at least one n");
  }
  for (std::size_t n : config.n_values) {
    if (n < 1) throw std::invalid_argument("experiment: need n >= 1");
  }
  if (config.omega_cap > 62) {
    throw std::invalid_argument("experiment: omega_cap must be <= 62");
  }
}

std::size_t worker_count(std::size_t tasks) {
  if (const char* env = std::getenv("VARBOUND_THREADS")) {
    std::size_t v = 0;
    const auto* end = env + std::string_view(env).size();
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc{} && ptr == end && v >= 1) {
      return std::min(v, tasks);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::min<std::size_t>(hw == 0 ? 1 : hw, tasks);
}

ExperimentRecord run_one(const ExperimentConfig& config, std::size_t n,
                         std::size_t trial) {
  ExperimentRecord rec;
  rec.n = n;
  rec.trial = trial;
  rec.seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(n),
                         static_cast<std::uint64_t>(trial));
  const GeneratorSpec spec(config.spec.center, config.spec.radius, rec.seed);
  const Instance inst = sample_instance(spec, n);
  rec.omega = omega_sweep(inst);
  rec.log2_two_pow_omega = static_cast<double>(rec.omega);

  if (config.mode == ExperimentMode::solve_and_time &&
      rec.omega <= config.omega_cap) {
    // Timing noise control: median of 3 runs once a single solve is slow
    // enough to matter.
    const int reps = n >= 100000 ? 3 : 1;
    double times[3] = {0, 0, 0};
    SolveResult result;
    for (int r = 0; r < reps; ++r) {
      result = solve_max_variance(inst);
      times[r] = result.wall_time_seconds;
    }
    std::sort(times, times + reps);
    rec.solve_seconds = times[reps / 2];
    rec.vertices_examined = result.vertices_examined;
    rec.max_variance = result.max_variance;
  }
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::size_t tasks = config.n_values.size() * config.trials;
  std::vector<ExperimentRecord> records(tasks);

  // Each task has a fixed slot and a seed derived from (master, n, trial),
  // so any number of workers produces the same records (timings aside).
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        const std::size_t ni = t / config.trials;
        records[t] = run_one(config, config.n_values[ni], t % config.trials);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t workers = worker_count(tasks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

double Aggregate::tail_freq(std::size_t t) const {
  const auto it =
      std::lower_bound(sorted_omegas.begin(), sorted_omegas.end(), t);
  return static_cast<double>(sorted_omegas.end() - it) /
         static_cast<double>(sorted_omegas.size());
}

Aggregate aggregate(const std::vector<ExperimentRecord>& records,
                    std::size_t n) {
  Aggregate agg;
  agg.n = n;
  double omega_sum = 0.0;
  double time_sum = 0.0;
  std::size_t timed = 0;
  for (const ExperimentRecord& r : records) {
    if (r.n != n) continue;
    agg.sorted_omegas.push_back(r.omega);
    omega_sum += static_cast<double>(r.omega);
    if (r.solve_seconds) {
      time_sum += *r.solve_seconds;
      ++timed;
    }
  }
  agg.count = agg.sorted_omegas.size();
  if (agg.count == 0) {
    throw std::invalid_argument("aggregate: no records for requested n");
  }
  std::sort(agg.sorted_omegas.begin(), agg.sorted_omegas.end());
  agg.mean_omega = omega_sum / static_cast<double>(agg.count);

  // mean(2^omega) in log2 space: factor out the largest exponent so the
  // partial sums stay in range even when omega is in the hundreds.
  const double top = static_cast<double>(agg.sorted_omegas.back());
  double scaled = 0.0;
  for (std::size_t w : agg.sorted_omegas) {
    scaled += std::exp2(static_cast<double>(w) - top);
  }
  agg.mean_two_pow_omega_log2 =
      top + std::log2(scaled / static_cast<double>(agg.count));
  if (agg.mean_two_pow_omega_log2 < 1023.0) {
    agg.mean_two_pow_omega = std::exp2(agg.mean_two_pow_omega_log2);
  }

  agg.omega_min = agg.sorted_omegas.front();
  agg.omega_max = agg.sorted_omegas.back();
  agg.omega_median = agg.sorted_omegas[(agg.count - 1) / 2];
  agg.omega_q90 = agg.sorted_omegas[std::min(agg.count - 1,
                                             (agg.count * 9) / 10)];
  if (timed > 0) {
    agg.mean_solve_seconds = time_sum / static_cast<double>(timed);
  }
  return agg;
}

double scaling_fit(
    const std::vector<std::pair<double, double>>& n_vs_seconds) {
  if (n_vs_seconds.size() < 3) {
    throw std::invalid_argument("scaling_fit: need at least 3 points");
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& [n, t] : n_vs_seconds) {
    if (!(n > 0.0) || !(t > 0.0)) {
      throw std::invalid_argument("scaling_fit: need positive n and time");
    }
    sx += std::log(n);
    sy += std::log(t);
  }
  const double mx = sx / static_cast<double>(n_vs_seconds.size());
  const double my = sy / static_cast<double>(n_vs_seconds.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, t] : n_vs_seconds) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(t) - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("scaling_fit: need distinct n values");
  }
  return sxy / sxx;
}

void write_csv(std::ostream& out,
               const std::vector<ExperimentRecord>& records) {
  out << "n,trial,seed,omega,log2_two_pow_omega,solve_ns,vertices_examined,"
         "max_variance\n";
  for (const ExperimentRecord& r : records) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << r.omega << ','
        << format_double(r.log2_two_pow_omega) << ',';
    if (r.solve_seconds) {
      out << static_cast<std::uint64_t>(
          std::llround(*r.solve_seconds * 1e9));
    }
    out << ',';
    if (r.vertices_examined) out << *r.vertices_examined;
    out << ',';
    if (r.max_variance) out << format_double(*r.max_variance);
    out << '\n';
  }
}

nlohmann::ordered_json summary_json(
    const ExperimentConfig& config,
    const std::vector<ExperimentRecord>& records) {
  nlohmann::ordered_json j;
  j["spec"] = {
      {"center",
       {{"kind", kind_token(config.spec.center.kind)},
        {"params", param_count(config.spec.center.kind) == 2
                       ? std::vector<double>{config.spec.center.p0,
                                             config.spec.center.p1}
                       : std::vector<double>{config.spec.center.p0}}}},
      {"radius",
       {{"kind", kind_token(config.spec.radius.kind)},
        {"params", param_count(config.spec.radius.kind) == 2
                       ? std::vector<double>{config.spec.radius.p0,
                                             config.spec.radius.p1}
                       : std::vector<double>{config.spec.radius.p0}}}}};
  j["master_seed"] = config.master_seed;
  j["trials"] = config.trials;
  j["mode"] = config.mode == ExperimentMode::omega_only ? "omega_only"
                                                        : "solve_and_time";
  j["omega_cap"] = config.omega_cap;

  std::vector<std::pair<double, double>> timed;
  nlohmann::ordered_json per_n = nlohmann::ordered_json::array();
  for (std::size_t n : config.n_values) {
    const Aggregate agg = aggregate(records, n);
    nlohmann::ordered_json row;
    row["n"] = n;
    row["count"] = agg.count;
    row["mean_omega"] = agg.mean_omega;
    row["mean_two_pow_omega_log2"] = agg.mean_two_pow_omega_log2;
    row["mean_two_pow_omega"] =
        agg.mean_two_pow_omega ? nlohmann::ordered_json(*agg.mean_two_pow_omega)
                               : nlohmann::ordered_json(nullptr);
    row["omega_min"] = agg.omega_min;
    row["omega_median"] = agg.omega_median;
    row["omega_q90"] = agg.omega_q90;
    row["omega_max"] = agg.omega_max;
    row["mean_solve_seconds"] =
        agg.mean_solve_seconds ? nlohmann::ordered_json(*agg.mean_solve_seconds)
                               : nlohmann::ordered_json(nullptr);
    // Theory overlays are defined from n = 16 up.
    if (n >= 16) {
      row["expected_omega_bound"] = expected_omega_bound(n);
      row["expected_two_omega_bound"] = expected_two_omega_bound(n);
    } else {
      row["expected_omega_bound"] = nullptr;
      row["expected_two_omega_bound"] = nullptr;
    }
    per_n.push_back(std::move(row));
    if (agg.mean_solve_seconds && *agg.mean_solve_seconds > 0.0) {
      timed.emplace_back(static_cast<double>(n), *agg.mean_solve_seconds);
    }
  }
  j["per_n"] = std::move(per_n);
  j["scaling_exponent"] = timed.size() >= 3
                              ? nlohmann::ordered_json(scaling_fit(timed))
                              : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace varbound
