#include "varbound/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace varbound {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Instance::Instance(std::vector<Interval> intervals) {
  require(!intervals.empty(), "instance needs at least one interval");
  const std::size_t n = intervals.size();
  lower_.reserve(n);
  upper_.reserve(n);
  center_.reserve(n);
  radius_.reserve(n);
  for (const Interval& iv : intervals) {
    require(std::isfinite(iv.lower) && std::isfinite(iv.upper),
            "interval bounds must be finite");
    require(iv.lower <= iv.upper, "interval lower bound exceeds upper bound");
    lower_.push_back(iv.lower);
    upper_.push_back(iv.upper);
    center_.push_back(0.5 * (iv.lower + iv.upper));
    radius_.push_back(0.5 * (iv.upper - iv.lower));
  }
}

Instance Instance::from_bounds(std::vector<double> lower,
                               std::vector<double> upper) {
  require(lower.size() == upper.size(),
          "lower/upper arrays differ in length");
  std::vector<Interval> ivs;
  ivs.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    ivs.push_back(Interval{lower[i], upper[i]});
  }
  return Instance(std::move(ivs));
}

double variance_direct(const Instance& inst, const SignVector& s) {
  require(s.size() == inst.size(), "sign vector length differs from instance");
  const std::size_t n = inst.size();
  double sum = 0.0, csum = 0.0;
  double sumsq = 0.0, csumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = inst.endpoint(i, s[i]);
    detail::kahan_add(sum, csum, x);
    detail::kahan_add(sumsq, csumsq, x * x);
  }
  const double mean = sum / static_cast<double>(n);
  const double v = sumsq / static_cast<double>(n) - mean * mean;
  return v > 0.0 ? v : 0.0;
}

std::vector<double> vertex_from_signs(const Instance& inst,
                                      const SignVector& s) {
  require(s.size() == inst.size(), "sign vector length differs from instance");
  std::vector<double> x(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    x[i] = inst.endpoint(i, s[i]);
  }
  return x;
}

VarianceState state_init_upper(const Instance& inst) {
  const std::size_t n = inst.size();
  double sum = 0.0, csum = 0.0;
  double sumsq = 0.0, csumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = inst.upper(i);
    detail::kahan_add(sum, csum, x);
    detail::kahan_add(sumsq, csumsq, x * x);
  }
  VarianceState st;
  st.v1 = sumsq / static_cast<double>(n);
  st.v2 = sum / static_cast<double>(n);
  return st;
}

void state_flip(VarianceState& state, const Instance& inst, std::size_t i,
                int new_sign) {
  if (i >= inst.size()) throw std::out_of_range("coordinate index out of range");
  const double inv_n = 1.0 / static_cast<double>(inst.size());
  const double nu = inst.endpoint(i, new_sign);
  const double old = inst.endpoint(i, -new_sign);
  detail::kahan_add(state.v1, state.comp1, inv_n * (nu * nu - old * old));
  detail::kahan_add(state.v2, state.comp2, inv_n * (nu - old));
}

std::pair<double, double> mean_bounds(const Instance& inst) {
  const std::size_t n = inst.size();
  double lo = 0.0, clo = 0.0;
  double hi = 0.0, chi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    detail::kahan_add(lo, clo, inst.lower(i));
    detail::kahan_add(hi, chi, inst.upper(i));
  }
  return {lo / static_cast<double>(n), hi / static_cast<double>(n)};
}

}  // namespace varbound
