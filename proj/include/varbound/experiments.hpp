#ifndef VARBOUND_EXPERIMENTS_HPP
#define VARBOUND_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "varbound/gen.hpp"

// Seeded Monte-Carlo harness. Every trial owns a seed derived as
// hash(master_seed, n, trial) and writes into its preallocated record
// slot, so the output is a pure function of the config no matter how many
// workers run (VARBOUND_THREADS overrides the worker count; timings are
// the only nondeterministic fields).

namespace varbound {

enum class ExperimentMode { omega_only, solve_and_time };

struct ExperimentConfig {
  GeneratorSpec spec;  // seed field ignored; master_seed drives all trials
  std::vector<std::size_t> n_values;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  ExperimentMode mode = ExperimentMode::omega_only;
  std::size_t omega_cap = 62;  // solve mode skips instances above this
};

struct ExperimentRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t omega = 0;
  // log2(2^omega) == omega exactly; kept explicit as the overflow-proof
  // storage form (2^omega itself leaves double range past omega ~ 1023).
  double log2_two_pow_omega = 0.0;
  std::optional<double> solve_seconds;  // median of 3 runs for n >= 1e5
  std::optional<std::uint64_t> vertices_examined;
  std::optional<double> max_variance;
};

/// trials x |n_values| records, sorted by (n-position, trial). Throws
/// std::invalid_argument on a bad config (trials < 1, empty n_values,
/// omega_cap > 62, any n < 1).
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

struct Aggregate {
  std::size_t n = 0;
  std::size_t count = 0;
  double mean_omega = 0.0;
  // log2 of mean(2^omega), accumulated in log space so omega ~ n survives.
  double mean_two_pow_omega_log2 = 0.0;
  // Linear value of the same mean when it fits a double.
  std::optional<double> mean_two_pow_omega;
  std::size_t omega_min = 0;
  std::size_t omega_max = 0;
  std::size_t omega_median = 0;  // lower median
  std::size_t omega_q90 = 0;     // nearest-rank 90th percentile
  std::optional<double> mean_solve_seconds;
  std::vector<std::size_t> sorted_omegas;

  /// Fraction of trials with omega >= t.
  double tail_freq(std::size_t t) const;
};

/// Aggregates the records for one n. Throws on empty selection.
Aggregate aggregate(const std::vector<ExperimentRecord>& records,
                    std::size_t n);

/// Least-squares slope of ln(seconds) against ln(n). Needs at least 3
/// points with positive times.
double scaling_fit(const std::vector<std::pair<double, double>>& n_vs_seconds);

/// CSV with header n,trial,seed,omega,log2_two_pow_omega,solve_ns,
/// vertices_examined,max_variance; absent fields are empty, reals are
/// shortest round-trip, solve_ns is integral nanoseconds.
void write_csv(std::ostream& out,
               const std::vector<ExperimentRecord>& records);

/// Per-n aggregates plus theory overlays (expected_omega_bound,
/// expected_two_omega_bound; null for n < 16) and the fitted scaling
/// exponent when three timed sizes exist.
nlohmann::ordered_json summary_json(
    const ExperimentConfig& config,
    const std::vector<ExperimentRecord>& records);

}  // namespace varbound

#endif  // VARBOUND_EXPERIMENTS_HPP
