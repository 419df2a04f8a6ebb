#include "varbound/oracle.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace varbound {

namespace {

// Plain two-pass sample variance, no compensation, no algebraic identity.
double variance_two_pass(const std::vector<double>& x) {
  const std::size_t n = x.size();
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / static_cast<double>(n);
  double acc = 0.0;
  for (double v : x) {
    const double d = v - mean;
    acc += d * d;
  }
  return acc / static_cast<double>(n);
}

}  // namespace

OracleResult brute_force_max(const Instance& inst) {
  const std::size_t n = inst.size();
  if (n > 25) {
    throw std::invalid_argument(
        "brute_force_max: refusing n > 25 (2^n vertices)");
  }

  // Counter bit n-1-i carries the sign of coordinate i (0 -> -1, 1 -> +1),
  // so counting upward enumerates sign vectors in lexicographic order and
  // a strict ">" comparison keeps the lexicographically smallest argmax.
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> x(n);
  double best = -1.0;
  std::uint64_t best_code = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool up = (code >> (n - 1 - i)) & 1u;
      x[i] = up ? inst.upper(i) : inst.lower(i);
    }
    const double v = variance_two_pass(x);
    if (v > best) {
      best = v;
      best_code = code;
    }
  }

  OracleResult res;
  res.max_variance = best;
  res.argmax_signs.signs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool up = (best_code >> (n - 1 - i)) & 1u;
    res.argmax_signs.signs[i] = up ? std::int8_t{1} : std::int8_t{-1};
  }
  return res;
}

std::size_t brute_force_clique(const EdgeList& edges, std::size_t n) {
  if (n > 20) {
    throw std::invalid_argument(
        "brute_force_clique: refusing n > 20 (2^n subsets)");
  }
  if (n == 0) return 0;

  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& [i, j] : edges.edges) {
    if (i >= n || j >= n || i == j) {
      throw std::invalid_argument("brute_force_clique: bad edge");
    }
    adj[i] |= std::uint32_t{1} << j;
    adj[j] |= std::uint32_t{1} << i;
  }

  // is_clique[S]: remove the lowest vertex v of S; S is a clique iff the
  // rest is one and v is adjacent to all of it.
  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<char> is_clique(total, 0);
  is_clique[0] = 1;
  std::size_t best = 0;
  for (std::uint32_t s = 1; s < total; ++s) {
    const unsigned v = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    if (is_clique[rest] && (rest & ~adj[v]) == 0) {
      is_clique[s] = 1;
      best = std::max<std::size_t>(best, std::popcount(s));
    }
  }
  return best;
}

}  // namespace varbound
