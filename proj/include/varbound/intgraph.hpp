#ifndef VARBOUND_INTGRAPH_HPP
#define VARBOUND_INTGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "varbound/core.hpp"

// Narrowed intervals and their intersection graph.
//
// The narrowed interval of [lower_i, upper_i] is the input interval shrunk
// by a factor n around its center: [center_i - radius_i/n, center_i +
// radius_i/n]. Two indices are adjacent when their narrowed intervals
// intersect (closed intervals, so touching endpoints count). The clique
// number omega of this graph controls the width of the solver's vertex
// enumeration and is the quantity the average-case experiments estimate.

namespace varbound {

struct NarrowedInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t owner = 0;
};

/// Unordered edge set {i, j}, i < j, of the narrowed-interval
/// intersection graph.
struct EdgeList {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

/// The n narrowed intervals, owner i in position i.
std::vector<NarrowedInterval> narrowed_intervals(const Instance& inst);

/// Clique number of the narrowed-interval intersection graph, computed as
/// the maximum number of narrowed intervals containing a common point
/// (interval graphs have the Helly property, so max overlap = max clique).
/// Endpoint events are sorted with begins before ends at equal coordinates:
/// closed intervals touching in a point do intersect. O(n log n).
std::size_t omega_sweep(const Instance& inst);

/// Explicit edge list: {i,j} present iff
/// |center_i - center_j| <= (radius_i + radius_j)/n. Quadratic; intended
/// for small n (cross-checks against omega_sweep).
EdgeList edge_list(const Instance& inst);

}  // namespace varbound

#endif  // VARBOUND_INTGRAPH_HPP
