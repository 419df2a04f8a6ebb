#ifndef VARBOUND_BOUNDS_HPP
#define VARBOUND_BOUNDS_HPP

#include <cstddef>

// Closed-form evaluators for the theoretical quantities the experiments
// are compared against: the binomial-style tail machinery (entropy_h,
// binomial_tail_bound), the enumeration-width expectations
// (expected_omega_bound, expected_two_omega_bound, tail_omega_bound), the
// light/heavy split threshold k_n with its summand u_ell, and the residual
// term zeta_n. All logarithms are natural. Everything is a pure function
// of explicit parameters, so curves can be tabulated for hypothetical
// models, not just for a concrete generator.

namespace varbound {

/// Parameter bundle for the edge-probability constant: L bounds the center
/// density, gamma is the radius moment E[radius^(1+eps)], and alpha is the
/// derived constant max{1, 8 L (1+gamma)/eps} with which the probability
/// of an edge between two fixed indices is at most alpha/n.
struct BoundParams {
  double L = 1.0;
  double gamma = 0.0;
  double eps = 1.0;
  double alpha = 1.0;

  BoundParams(double L, double gamma, double eps);
};

/// H(xi) = 1 - xi + xi ln xi for xi > 0. Zero exactly at xi = 1, convex,
/// and the exponent shape of the binomial tail bound below.
double entropy_h(double xi);

/// exp(-n p H(kappa / (n p))), an upper bound for Pr[Binomial(n,p) >=
/// kappa]. Requires 0 < p < 1 and kappa >= n p; value is in (0, 1].
double binomial_tail_bound(std::size_t n, double p, double kappa);

/// Split threshold k_n = (1/ln 2) * ln n / ln ln n. Requires n >= 16.
double k_n(std::size_t n);

/// 1 + 2 n^(1/ln ln n), the bound on E[2^omega]. Requires n >= 16.
double expected_two_omega_bound(std::size_t n);

/// (3/2)(1 + ln n / ln ln n), the bound on E[omega]. Requires n >= 16.
double expected_omega_bound(std::size_t n);

/// exp(-n ln ln n), the bound on Pr[omega >= delta n]. Requires n >= 16.
double tail_omega_bound(std::size_t n);

/// Summand u_ell of the heavy part of the E[2^omega] estimate. Evaluated
/// in two algebraically identical forms, the entropy form
///   2 * 2^ell * n * exp(-alpha ((n-1)/n) H(n ell / (alpha (n-1))))
/// and the product form
///   2 n e^(-alpha (n-1)/n) * (2 e alpha / ell * (n-1)/n)^ell
/// cross-checked to 1e-10 relative (in log space), returning the product
/// form. Requires n >= 2, ell >= 1, and n ell / (alpha (n-1)) >= 1 (the
/// monotone regime of H). Underflows cleanly to 0.
double u_ell(std::size_t n, double alpha, std::size_t ell);

/// Residual zeta_n = n^(1-c) * n^(c (K + ln ln ln n)/ln ln n) with
/// K = ln(8 alpha / c). Requires n >= 16, c > 0, alpha >= 1.
double zeta_n(std::size_t n, double alpha, double c);

}  // namespace varbound

#endif  // VARBOUND_BOUNDS_HPP
