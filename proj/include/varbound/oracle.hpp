#ifndef VARBOUND_ORACLE_HPP
#define VARBOUND_ORACLE_HPP

#include <cstddef>

#include "varbound/core.hpp"
#include "varbound/intgraph.hpp"

// Brute-force reference implementations. These deliberately share no code
// with the sweep solver or the clique sweep: the variance oracle uses the
// textbook two-pass formula over explicitly materialized vertices, and the
// clique oracle works on an explicit edge list by subset dynamic
// programming. They exist purely so the fast paths have something
// independent to be compared against.

namespace varbound {

struct OracleResult {
  double max_variance = 0.0;
  SignVector argmax_signs;
};

/// Evaluate the variance at all 2^n box vertices and return the maximum.
/// Ties are broken toward the lexicographically smallest sign vector
/// (-1 sorts before +1). Refuses n > 25.
OracleResult brute_force_max(const Instance& inst);

/// Exact clique number of the graph on n vertices given by the edge list,
/// by dynamic programming over all 2^n vertex subsets. Refuses n > 20.
std::size_t brute_force_clique(const EdgeList& edges, std::size_t n);

}  // namespace varbound

#endif  // VARBOUND_ORACLE_HPP
