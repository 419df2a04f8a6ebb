#include "varbound/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace varbound {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// exp of both u_ell forms underflows to 0 well below this; comparing the
// two log values there would only compare rounding garbage.
constexpr double kLogUnderflow = -690.0;

}  // namespace

BoundParams::BoundParams(double L_, double gamma_, double eps_)
    : L(L_), gamma(gamma_), eps(eps_) {
  require(std::isfinite(L) && L > 0.0, "BoundParams: need L > 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "BoundParams: need gamma >= 0");
  require(std::isfinite(eps) && eps > 0.0 && eps <= 1.0,
          "BoundParams: need 0 < eps <= 1");
  alpha = std::max(1.0, 8.0 * L * (1.0 + gamma) / eps);
}

double entropy_h(double xi) {
  require(std::isfinite(xi) && xi > 0.0, "entropy_h: need xi > 0");
  return 1.0 - xi + xi * std::log(xi);
}

double binomial_tail_bound(std::size_t n, double p, double kappa) {
  require(n >= 1, "binomial_tail_bound: need n >= 1");
  require(std::isfinite(p) && p > 0.0 && p < 1.0,
          "binomial_tail_bound: need 0 < p < 1");
  const double np = static_cast<double>(n) * p;
  require(std::isfinite(kappa) && kappa >= np,
          "binomial_tail_bound: need kappa >= n*p");
  return std::exp(-np * entropy_h(kappa / np));
}

double k_n(std::size_t n) {
  require(n >= 16, "k_n: need n >= 16");
  const double ln_n = std::log(static_cast<double>(n));
  return ln_n / (std::numbers::ln2 * std::log(ln_n));
}

double expected_two_omega_bound(std::size_t n) {
  require(n >= 16, "expected_two_omega_bound: need n >= 16");
  const double ln_n = std::log(static_cast<double>(n));
  return 1.0 + 2.0 * std::exp(ln_n / std::log(ln_n));
}

double expected_omega_bound(std::size_t n) {
  require(n >= 16, "expected_omega_bound: need n >= 16");
  const double ln_n = std::log(static_cast<double>(n));
  return 1.5 * (1.0 + ln_n / std::log(ln_n));
}

double tail_omega_bound(std::size_t n) {
  require(n >= 16, "tail_omega_bound: need n >= 16");
  const double ln_n = std::log(static_cast<double>(n));
  return std::exp(-static_cast<double>(n) * std::log(ln_n));
}

double u_ell(std::size_t n, double alpha, std::size_t ell) {
  require(n >= 2, "u_ell: need n >= 2");
  require(ell >= 1, "u_ell: need ell >= 1");
  require(std::isfinite(alpha) && alpha > 0.0, "u_ell: need alpha > 0");
  const double nd = static_cast<double>(n);
  const double ld = static_cast<double>(ell);
  const double shrink = (nd - 1.0) / nd;
  const double xi = ld * nd / (alpha * (nd - 1.0));
  require(xi >= 1.0, "u_ell: need n*ell/(alpha*(n-1)) >= 1");

  // Entropy form: 2 * 2^ell * n * exp(-alpha * shrink * H(xi)).
  const double log_h = (1.0 + ld) * std::numbers::ln2 + std::log(nd) -
                       alpha * shrink * entropy_h(xi);
  // Product form: 2n e^(-alpha*shrink) (2 e alpha / ell * shrink)^ell.
  const double log_p =
      std::numbers::ln2 + std::log(nd) - alpha * shrink +
      ld * (std::numbers::ln2 + 1.0 + std::log(alpha) - std::log(ld) +
            std::log(shrink));

  if (log_h < kLogUnderflow && log_p < kLogUnderflow) return 0.0;
  if (std::abs(log_h - log_p) > 1e-10) {
    // The forms are algebraically identical; disagreement means a numeric
    // or transcription bug, not a caller error.
    throw std::logic_error("u_ell: dual evaluations diverged");
  }
  return std::exp(log_p);
}

double zeta_n(std::size_t n, double alpha, double c) {
  require(n >= 16, "zeta_n: need n >= 16 (ln ln ln n undefined below e^e)");
  require(std::isfinite(alpha) && alpha >= 1.0, "zeta_n: need alpha >= 1");
  require(std::isfinite(c) && c > 0.0, "zeta_n: need c > 0");
  const double ln_n = std::log(static_cast<double>(n));
  const double lnln_n = std::log(ln_n);
  const double lnlnln_n = std::log(lnln_n);
  const double K = std::log(8.0 * alpha / c);
  const double log_zeta =
      (1.0 - c) * ln_n + c * (K + lnlnln_n) * ln_n / lnln_n;
  return std::exp(log_zeta);
}

}  // namespace varbound
