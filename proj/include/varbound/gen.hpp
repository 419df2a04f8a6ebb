#ifndef VARBOUND_GEN_HPP
#define VARBOUND_GEN_HPP

#include <cstdint>
#include <optional>

#include "varbound/core.hpp"

// Random instance generation.
//
// Everything here is deterministic given (spec, n): the PRNG is a fixed
// SplitMix64 (64-bit add-and-mix, no platform-dependent state), and every
// coordinate draws from its own derived stream, so instances are
// byte-identical across platforms and independent of fill order. That is
// what makes the Monte-Carlo harness reproducible under any worker count.

namespace varbound {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer; also used as the general-purpose 64-bit hash for
/// stream and seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

/// SplitMix64: state advances by the golden-ratio increment, outputs are
/// the mixed counter. Tiny, splittable, and exactly reproducible.
class Prng {
 public:
  explicit Prng(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform draw in the open interval (0,1): 53 random bits centered in
  /// their bucket, so 0 and 1 are never produced (logs and negative powers
  /// of the result are always finite).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Independent stream for one coordinate slot: hash the seed with the slot
/// index so streams can be created in any order (or in parallel).
inline Prng coordinate_stream(std::uint64_t seed, std::uint64_t index) {
  return Prng(mix64(seed ^ mix64(index + kGolden)));
}

/// Per-trial seed for the experiment harness: hash(master, n, trial).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n,
                          std::uint64_t trial);

enum class CenterKind { uniform, gaussian, power_cdf };
enum class RadiusKind {
  constant,
  exponential,
  pareto,
  half_gaussian,
  dependent_power
};

/// Center (interval midpoint) distribution. p0/p1 hold the parameters:
/// uniform -> (a, b); gaussian -> (mean, sigma); power_cdf -> (epsilon, -)
/// where the CDF is z^epsilon on [0,1] (density unbounded at 0 for
/// epsilon < 1, piling mass near the origin).
struct CenterDistribution {
  CenterKind kind = CenterKind::uniform;
  double p0 = 0.0;
  double p1 = 1.0;

  static CenterDistribution uniform(double a, double b);
  static CenterDistribution gaussian(double mean, double sigma);
  static CenterDistribution power_cdf(double epsilon);
};

/// Radius (interval half-width) distribution. p0/p1:
/// constant -> (c, -); exponential -> (lambda, -); pareto -> (shape,
/// scale); half_gaussian -> (sigma, -); dependent_power -> (epsilon, -)
/// where radius = center^(epsilon - 1), coupling the radius to the center
/// (large radii exactly where centers crowd).
struct RadiusDistribution {
  RadiusKind kind = RadiusKind::constant;
  double p0 = 0.0;
  double p1 = 0.0;

  static RadiusDistribution constant(double c);
  static RadiusDistribution exponential(double lambda);
  static RadiusDistribution pareto(double shape, double scale);
  static RadiusDistribution half_gaussian(double sigma);
  static RadiusDistribution dependent_power(double epsilon);
};

struct GeneratorSpec {
  CenterDistribution center;
  RadiusDistribution radius;
  std::uint64_t seed = 0;

  /// Validates the combination: dependent_power radii require uniform(0,1)
  /// centers (the coupling formula needs centers in (0,1)).
  GeneratorSpec(CenterDistribution center, RadiusDistribution radius,
                std::uint64_t seed);
};

/// Grammar/JSON tokens for the kinds ("uniform", "gaussian", "power";
/// "const", "exp", "pareto", "halfgauss", "deppow") and how many of p0/p1
/// each kind uses.
const char* kind_token(CenterKind kind);
const char* kind_token(RadiusKind kind);
int param_count(CenterKind kind);
int param_count(RadiusKind kind);

double sample_center(const CenterDistribution& dist, Prng& rng);

/// center is consulted only by dependent_power; the others ignore it.
double sample_radius(const RadiusDistribution& dist, double center,
                     Prng& rng);

/// n intervals [center_i - radius_i, center_i + radius_i]; coordinate i
/// uses streams 2i (center) and 2i+1 (radius) derived from spec.seed.
Instance sample_instance(const GeneratorSpec& spec, std::size_t n);

/// Peak of the center density (the Lipschitz constant of the center CDF):
/// uniform -> 1/(b-a); gaussian -> 1/(sigma*sqrt(2*pi)); power_cdf ->
/// absent (density z^(eps-1) is unbounded at the origin).
std::optional<double> lipschitz_constant(const GeneratorSpec& spec);

/// Analytic E[radius^(1+eps)], or absent when the moment is infinite.
/// Requires 0 < eps <= 1.
std::optional<double> moment_bound(const GeneratorSpec& spec, double eps);

}  // namespace varbound

#endif  // VARBOUND_GEN_HPP
