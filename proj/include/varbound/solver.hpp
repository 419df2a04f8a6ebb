#ifndef VARBOUND_SOLVER_HPP
#define VARBOUND_SOLVER_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "varbound/core.hpp"

// Exact maximization of the sample variance over a box.
//
// The maximum is attained at a vertex, and at the optimum every coordinate
// whose narrowed interval does not contain the optimal mean is forced: mean
// above the narrowed interval -> lower endpoint, mean below -> upper
// endpoint. The solver sweeps the sorted distinct narrowed endpoints
// a_1 < ... < a_m; at each sweep point only the coordinates whose narrowed
// interval contains it (the free set L_k) are undetermined, and their 2^|L_k|
// sign patterns are enumerated with a Gray code so each candidate vertex
// costs one O(1) update of the running statistics. Total vertices examined:
// 1 + sum_k 2^|L_k|.

namespace varbound {

/// Thrown when the free set somewhere along the sweep exceeds 62
/// coordinates, i.e. the enumeration would need more than 2^62 steps.
class WidthError : public std::runtime_error {
 public:
  explicit WidthError(std::size_t omega)
      : std::runtime_error("free set of width " + std::to_string(omega) +
                           " exceeds the enumeration limit of 62"),
        omega(omega) {}

  std::size_t omega;
};

/// Sweep plan in CSR layout. points holds the m distinct narrowed-interval
/// endpoints in ascending order; begins/ends group the coordinate indices
/// whose narrowed interval starts/stops at each point (ascending index
/// within a point).
struct SweepSchedule {
  std::vector<double> points;
  std::vector<std::uint32_t> begin_offsets;  // size m + 1
  std::vector<std::uint32_t> begin_indices;  // size n
  std::vector<std::uint32_t> end_offsets;    // size m + 1
  std::vector<std::uint32_t> end_indices;    // size n

  std::size_t point_count() const { return points.size(); }

  std::span<const std::uint32_t> begins(std::size_t k) const {
    return {begin_indices.data() + begin_offsets[k],
            begin_indices.data() + begin_offsets[k + 1]};
  }
  std::span<const std::uint32_t> ends(std::size_t k) const {
    return {end_indices.data() + end_offsets[k],
            end_indices.data() + end_offsets[k + 1]};
  }
};

/// Build the sweep schedule from all 2n narrowed endpoints. Values are
/// deduplicated exactly (bitwise); every endpoint becomes a sweep point.
SweepSchedule build_schedule(const Instance& inst);

/// Largest free-set size along the schedule: at each point the begins are
/// added before the ends are removed (closed intervals touching in a point
/// do overlap). Equals the clique number of the narrowed-interval
/// intersection graph.
std::size_t max_active_width(const SweepSchedule& sched);

/// Gray-code walk over all 2^k sign patterns of the k free coordinates,
/// starting from the current signs. Each step flips exactly one coordinate
/// (position min(countr_zero(step), k-1) in free_indices), updates state
/// via state_flip, sets the sign, and calls visit(step, pos, state.value())
/// with step running 1..2^k. The entry pattern is visited at the final
/// step, so on return signs are exactly as on entry and state has been
/// restored by an even number of flips per coordinate. An empty free set
/// visits nothing (the current vertex was already examined by the caller);
/// k > 62 is refused with WidthError.
template <class Visit>
void traverse_free(std::span<const std::uint32_t> free_indices,
                   VarianceState& state, const Instance& inst,
                   std::span<std::int8_t> signs, Visit&& visit) {
  const std::size_t k = free_indices.size();
  if (k == 0) return;
  if (k > 62) throw WidthError(k);
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step <= total; ++step) {
    const std::size_t pos = std::min<std::size_t>(
        static_cast<std::size_t>(std::countr_zero(step)), k - 1);
    const std::uint32_t i = free_indices[pos];
    const std::int8_t flipped = static_cast<std::int8_t>(-signs[i]);
    state_flip(state, inst, i, flipped);
    signs[i] = flipped;
    visit(step, pos, state.value());
  }
}

struct FreeEnumeration {
  double best = 0.0;
  /// Full sign vector of the best visited vertex; empty when nothing beat
  /// best_so_far.
  std::optional<SignVector> best_signs;
};

/// Enumerate the 2^|free_indices| patterns via traverse_free and return the
/// best variance seen, seeded with best_so_far (strict improvement keeps
/// the earliest maximum). signs/state are restored on exit as described at
/// traverse_free. Empty free set: returns best_so_far untouched (the
/// caller's incumbent already covers the current vertex). Throws WidthError
/// for more than 62 free coordinates.
FreeEnumeration enumerate_free(std::span<const std::uint32_t> free_indices,
                               VarianceState& state, const Instance& inst,
                               double best_so_far,
                               std::span<std::int8_t> signs);

struct SolveResult {
  double max_variance = 0.0;
  SignVector argmax_signs;
  std::size_t omega_observed = 0;    // largest free-set size met
  std::size_t schedule_points = 0;   // m, distinct sweep points
  std::uint64_t vertices_examined = 0;
  double wall_time_seconds = 0.0;
};

/// Exact maximum of the sample variance over the box. Throws WidthError if
/// the free set would exceed 62 anywhere (checked before any enumeration).
/// The reported max_variance is recomputed from the argmax signs with
/// variance_direct, so it carries no drift from the incremental updates.
SolveResult solve_max_variance(const Instance& inst);

}  // namespace varbound

#endif  // VARBOUND_SOLVER_HPP
