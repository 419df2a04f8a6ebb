#include "varbound/gen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace varbound {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite(double x) { return std::isfinite(x); }

double box_muller(Prng& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n,
                          std::uint64_t trial) {
  std::uint64_t h = mix64(master ^ kGolden);
  h = mix64(h ^ n);
  h = mix64(h ^ trial);
  return h;
}

CenterDistribution CenterDistribution::uniform(double a, double b) {
  require(finite(a) && finite(b) && a < b, "uniform center: need a < b");
  return {CenterKind::uniform, a, b};
}

CenterDistribution CenterDistribution::gaussian(double mean, double sigma) {
  require(finite(mean) && finite(sigma) && sigma > 0.0,
          "gaussian center: need sigma > 0");
  return {CenterKind::gaussian, mean, sigma};
}

CenterDistribution CenterDistribution::power_cdf(double epsilon) {
  require(finite(epsilon) && epsilon > 0.0 && epsilon <= 1.0,
          "power center: need 0 < epsilon <= 1");
  return {CenterKind::power_cdf, epsilon, 0.0};
}

RadiusDistribution RadiusDistribution::constant(double c) {
  require(finite(c) && c >= 0.0, "constant radius: need c >= 0");
  return {RadiusKind::constant, c, 0.0};
}

RadiusDistribution RadiusDistribution::exponential(double lambda) {
  require(finite(lambda) && lambda > 0.0,
          "exponential radius: need lambda > 0");
  return {RadiusKind::exponential, lambda, 0.0};
}

RadiusDistribution RadiusDistribution::pareto(double shape, double scale) {
  require(finite(shape) && finite(scale) && shape > 1.0 && scale > 0.0,
          "pareto radius: need shape > 1 and scale > 0");
  return {RadiusKind::pareto, shape, scale};
}

RadiusDistribution RadiusDistribution::half_gaussian(double sigma) {
  require(finite(sigma) && sigma > 0.0,
          "half-gaussian radius: need sigma > 0");
  return {RadiusKind::half_gaussian, sigma, 0.0};
}

RadiusDistribution RadiusDistribution::dependent_power(double epsilon) {
  require(finite(epsilon) && epsilon > 0.0 && epsilon < 1.0,
          "dependent-power radius: need 0 < epsilon < 1");
  return {RadiusKind::dependent_power, epsilon, 0.0};
}

GeneratorSpec::GeneratorSpec(CenterDistribution center_,
                             RadiusDistribution radius_, std::uint64_t seed_)
    : center(center_), radius(radius_), seed(seed_) {
  if (radius.kind == RadiusKind::dependent_power) {
    require(center.kind == CenterKind::uniform && center.p0 == 0.0 &&
                center.p1 == 1.0,
            "dependent-power radius requires uniform(0,1) centers");
  }
}

const char* kind_token(CenterKind kind) {
  switch (kind) {
    case CenterKind::uniform:
      return "uniform";
    case CenterKind::gaussian:
      return "gaussian";
    case CenterKind::power_cdf:
      return "power";
  }
  throw std::logic_error("unknown center kind");
}

const char* kind_token(RadiusKind kind) {
  switch (kind) {
    case RadiusKind::constant:
      return "const";
    case RadiusKind::exponential:
      return "exp";
    case RadiusKind::pareto:
      return "pareto";
    case RadiusKind::half_gaussian:
      return "halfgauss";
    case RadiusKind::dependent_power:
      return "deppow";
  }
  throw std::logic_error("unknown radius kind");
}

int param_count(CenterKind kind) {
  switch (kind) {
    case CenterKind::uniform:
    case CenterKind::gaussian:
      return 2;
    case CenterKind::power_cdf:
      return 1;
  }
  throw std::logic_error("unknown center kind");
}

int param_count(RadiusKind kind) {
  switch (kind) {
    case RadiusKind::pareto:
      return 2;
    case RadiusKind::constant:
    case RadiusKind::exponential:
    case RadiusKind::half_gaussian:
    case RadiusKind::dependent_power:
      return 1;
  }
  throw std::logic_error("unknown radius kind");
}

double sample_center(const CenterDistribution& dist, Prng& rng) {
  switch (dist.kind) {
    case CenterKind::uniform:
      return dist.p0 + (dist.p1 - dist.p0) * rng.next_unit();
    case CenterKind::gaussian:
      return dist.p0 + dist.p1 * box_muller(rng);
    case CenterKind::power_cdf:
      // Inverse transform of F(z) = z^eps on [0,1].
      return std::pow(rng.next_unit(), 1.0 / dist.p0);
  }
  throw std::logic_error("unknown center kind");
}

double sample_radius(const RadiusDistribution& dist, double center,
                     Prng& rng) {
  switch (dist.kind) {
    case RadiusKind::constant:
      return dist.p0;
    case RadiusKind::exponential:
      return -std::log(rng.next_unit()) / dist.p0;
    case RadiusKind::pareto:
      // Inverse transform of F(r) = 1 - (scale/r)^shape, r >= scale.
      return dist.p1 * std::pow(rng.next_unit(), -1.0 / dist.p0);
    case RadiusKind::half_gaussian:
      return dist.p0 * std::abs(box_muller(rng));
    case RadiusKind::dependent_power:
      // No randomness of its own: radius = center^(eps-1). Centers are
      // uniform(0,1) (enforced), never exactly 0, so this is finite.
      return std::pow(center, dist.p0 - 1.0);
  }
  throw std::logic_error("unknown radius kind");
}

Instance sample_instance(const GeneratorSpec& spec, std::size_t n) {
  require(n >= 1, "sample_instance: need n >= 1");
  std::vector<double> lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto slot = static_cast<std::uint64_t>(i);
    Prng center_rng = coordinate_stream(spec.seed, 2 * slot);
    Prng radius_rng = coordinate_stream(spec.seed, 2 * slot + 1);
    const double c = sample_center(spec.center, center_rng);
    const double r = sample_radius(spec.radius, c, radius_rng);
    lower[i] = c - r;
    upper[i] = c + r;
  }
  return Instance::from_bounds(std::move(lower), std::move(upper));
}

std::optional<double> lipschitz_constant(const GeneratorSpec& spec) {
  switch (spec.center.kind) {
    case CenterKind::uniform:
      return 1.0 / (spec.center.p1 - spec.center.p0);
    case CenterKind::gaussian:
      return 1.0 / (spec.center.p1 * std::sqrt(2.0 * std::numbers::pi));
    case CenterKind::power_cdf:
      return std::nullopt;
  }
  throw std::logic_error("unknown center kind");
}

std::optional<double> moment_bound(const GeneratorSpec& spec, double eps) {
  require(eps > 0.0 && eps <= 1.0, "moment_bound: need 0 < eps <= 1");
  const double p = 1.0 + eps;
  const RadiusDistribution& r = spec.radius;
  switch (r.kind) {
    case RadiusKind::constant:
      return std::pow(r.p0, p);
    case RadiusKind::exponential:
      // E X^p for Exp(lambda) is Gamma(p+1)/lambda^p.
      return std::tgamma(p + 1.0) / std::pow(r.p0, p);
    case RadiusKind::pareto: {
      const double shape = r.p0, scale = r.p1;
      if (shape <= p) return std::nullopt;  // divergent tail integral
      return shape * std::pow(scale, p) / (shape - p);
    }
    case RadiusKind::half_gaussian:
      // E |sigma Z|^p = sigma^p 2^(p/2) Gamma((p+1)/2) / sqrt(pi).
      return std::pow(r.p0, p) * std::pow(2.0, 0.5 * p) *
             std::tgamma(0.5 * (p + 1.0)) / std::sqrt(std::numbers::pi);
    case RadiusKind::dependent_power: {
      // radius = center^(eps0-1) with uniform(0,1) centers:
      // E radius^p = integral_0^1 x^((eps0-1)p) dx, finite iff the
      // exponent exceeds -1.
      const double q = (r.p0 - 1.0) * p;
      if (q <= -1.0) return std::nullopt;
      return 1.0 / (1.0 + q);
    }
  }
  throw std::logic_error("unknown radius kind");
}

}  // namespace varbound
