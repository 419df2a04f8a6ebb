#ifndef VARBOUND_CORE_HPP
#define VARBOUND_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

// Domain types and exact/incremental variance arithmetic shared by the
// solver, the instance generators and the experiment harness.
//
// The objective throughout is the population variance
//   V(x) = (1/n) * sum_i (x_i - mean(x))^2
// evaluated at vertices of the box [lower, upper]^n, i.e. at points whose
// coordinates sit on interval endpoints. A vertex is addressed by a sign
// vector s in {-1,+1}^n via x_i = center_i + s_i * radius_i.

namespace varbound {

/// One closed interval [lower, upper]. Both bounds must be finite and
/// lower <= upper; Instance validates on construction.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// A problem instance: n intervals plus derived centers and radii.
/// Immutable after construction.
class Instance {
 public:
  explicit Instance(std::vector<Interval> intervals);

  static Instance from_bounds(std::vector<double> lower,
                              std::vector<double> upper);

  std::size_t size() const { return lower_.size(); }

  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double center(std::size_t i) const { return center_[i]; }
  double radius(std::size_t i) const { return radius_[i]; }

  std::span<const double> lowers() const { return lower_; }
  std::span<const double> uppers() const { return upper_; }
  std::span<const double> centers() const { return center_; }
  std::span<const double> radii() const { return radius_; }

  /// Endpoint selected by a sign: center + sign*radius, snapped to the
  /// stored bound so the result is bit-identical to lower/upper.
  double endpoint(std::size_t i, int sign) const {
    return sign > 0 ? upper_[i] : lower_[i];
  }

 private:
  std::vector<double> lower_, upper_, center_, radius_;
};

/// An element of {-1,+1}^n selecting one vertex of the box.
struct SignVector {
  std::vector<std::int8_t> signs;

  static SignVector all_upper(std::size_t n) {
    return SignVector{std::vector<std::int8_t>(n, std::int8_t{1})};
  }

  std::size_t size() const { return signs.size(); }
  std::int8_t operator[](std::size_t i) const { return signs[i]; }
  std::int8_t& operator[](std::size_t i) { return signs[i]; }

  friend bool operator==(const SignVector& a, const SignVector& b) {
    return a.signs == b.signs;
  }
};

/// Running pair (v1, v2) with v1 = mean of squared coordinates and
/// v2 = mean of coordinates, so that V = v1 - v2^2. comp1/comp2 are
/// Kahan compensation terms: the enumeration performs up to 2^omega
/// dependent O(1) updates and plain accumulation would drift.
struct VarianceState {
  double v1 = 0.0;
  double v2 = 0.0;
  double comp1 = 0.0;
  double comp2 = 0.0;

  /// Current variance v1 - v2^2 (may be a hair below zero from rounding).
  double value() const { return v1 - v2 * v2; }
};

/// Variance at the vertex selected by `s`, evaluated in a single compensated
/// pass as mean(x^2) - mean(x)^2. Negative rounding residue is clamped to 0.
/// Throws std::invalid_argument on dimension mismatch.
double variance_direct(const Instance& inst, const SignVector& s);

/// The vertex coordinates x_i = center_i + s_i*radius_i (exactly lower_i or
/// upper_i). Throws std::invalid_argument on dimension mismatch.
std::vector<double> vertex_from_signs(const Instance& inst,
                                      const SignVector& s);

/// State positioned at the all-upper vertex: v1 = mean(upper^2),
/// v2 = mean(upper).
VarianceState state_init_upper(const Instance& inst);

/// Move coordinate i to the endpoint selected by new_sign, updating
/// v1 += (new^2 - old^2)/n and v2 += (new - old)/n with compensated
/// accumulation. The caller tracks current signs; the coordinate must
/// currently hold the opposite endpoint. O(1).
void state_flip(VarianceState& state, const Instance& inst, std::size_t i,
                int new_sign);

/// Range of attainable means: (mean of lowers, mean of uppers).
std::pair<double, double> mean_bounds(const Instance& inst);

namespace detail {
/// One Kahan step: acc += term with compensation comp.
inline void kahan_add(double& acc, double& comp, double term) {
  double y = term - comp;
  double t = acc + y;
  comp = (t - acc) - y;
  acc = t;
}
}  // namespace detail

}  // namespace varbound

#endif  // VARBOUND_CORE_HPP
