#include "varbound/intgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace varbound {

std::vector<NarrowedInterval> narrowed_intervals(const Instance& inst) {
  const std::size_t n = inst.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<NarrowedInterval> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = inst.center(i);
    const double rn = inst.radius(i) * inv_n;
    out[i] = NarrowedInterval{c - rn, c + rn, i};
  }
  return out;
}

std::size_t omega_sweep(const Instance& inst) {
  const std::size_t n = inst.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Event at (coordinate, kind); kind 0 = begin, 1 = end. Sorting pairs
  // lexicographically puts begins ahead of ends at equal coordinates,
  // which is the closed-interval convention: intervals meeting in a
  // single point overlap there.
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = inst.center(i);
    const double rn = inst.radius(i) * inv_n;
    events.emplace_back(c - rn, 0);
    events.emplace_back(c + rn, 1);
  }
  std::sort(events.begin(), events.end());

  std::size_t active = 0;
  std::size_t best = 0;
  for (const auto& [coord, kind] : events) {
    (void)coord;
    if (kind == 0) {
      ++active;
      best = std::max(best, active);
    } else {
      --active;
    }
  }
  return best;
}

EdgeList edge_list(const Instance& inst) {
  const std::size_t n = inst.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  EdgeList out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(inst.center(i) - inst.center(j));
      const double reach = (inst.radius(i) + inst.radius(j)) * inv_n;
      if (gap <= reach) {
        out.edges.emplace_back(static_cast<std::uint32_t>(i),
                               static_cast<std::uint32_t>(j));
      }
    }
  }
  return out;
}

}  // namespace varbound
