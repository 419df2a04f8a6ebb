#include "varbound/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace varbound {

namespace {

// Stable removal: everything that survives keeps its relative order, so a
// replay that repeats the same appends/removals reproduces the free set
// element for element.
void erase_stable(std::vector<std::uint32_t>& vec, std::uint32_t value) {
  const auto it = std::find(vec.begin(), vec.end(), value);
  if (it == vec.end()) {
    throw std::logic_error("sweep bookkeeping lost a free index");
  }
  vec.erase(it);
}

}  // namespace

SweepSchedule build_schedule(const Instance& inst) {
  const std::size_t n = inst.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("build_schedule: instance too large");
  }
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<std::pair<double, std::uint32_t>> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = inst.center(i);
    const double rn = inst.radius(i) * inv_n;
    lo[i] = {c - rn, static_cast<std::uint32_t>(i)};
    hi[i] = {c + rn, static_cast<std::uint32_t>(i)};
  }
  // Pair order = (value, index): within one sweep point the indices come
  // out ascending, which pins down the free-set order exactly.
  std::sort(lo.begin(), lo.end());
  std::sort(hi.begin(), hi.end());

  SweepSchedule sched;
  sched.points.reserve(2 * n);
  {
    std::size_t a = 0, b = 0;
    while (a < n || b < n) {
      double v;
      if (b == n || (a < n && lo[a].first <= hi[b].first)) {
        v = lo[a].first;
      } else {
        v = hi[b].first;
      }
      if (sched.points.empty() || sched.points.back() != v) {
        sched.points.push_back(v);
      }
      while (a < n && lo[a].first == v) ++a;
      while (b < n && hi[b].first == v) ++b;
    }
  }

  const std::size_t m = sched.points.size();
  sched.begin_offsets.resize(m + 1);
  sched.end_offsets.resize(m + 1);
  sched.begin_indices.resize(n);
  sched.end_indices.resize(n);
  std::size_t a = 0, b = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sched.begin_offsets[k] = static_cast<std::uint32_t>(a);
    while (a < n && lo[a].first == sched.points[k]) {
      sched.begin_indices[a] = lo[a].second;
      ++a;
    }
    sched.end_offsets[k] = static_cast<std::uint32_t>(b);
    while (b < n && hi[b].first == sched.points[k]) {
      sched.end_indices[b] = hi[b].second;
      ++b;
    }
  }
  sched.begin_offsets[m] = static_cast<std::uint32_t>(n);
  sched.end_offsets[m] = static_cast<std::uint32_t>(n);
  return sched;
}

std::size_t max_active_width(const SweepSchedule& sched) {
  std::size_t active = 0;
  std::size_t best = 0;
  for (std::size_t k = 0; k < sched.point_count(); ++k) {
    active += sched.begins(k).size();
    best = std::max(best, active);
    active -= sched.ends(k).size();
  }
  return best;
}

FreeEnumeration enumerate_free(std::span<const std::uint32_t> free_indices,
                               VarianceState& state, const Instance& inst,
                               double best_so_far,
                               std::span<std::int8_t> signs) {
  FreeEnumeration out;
  out.best = best_so_far;
  traverse_free(free_indices, state, inst, signs,
                [&](std::uint64_t, std::size_t, double value) {
                  if (value > out.best) {
                    out.best = value;
                    SignVector sv;
                    sv.signs.assign(signs.begin(), signs.end());
                    out.best_signs = std::move(sv);
                  }
                });
  return out;
}

SolveResult solve_max_variance(const Instance& inst) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = inst.size();

  const SweepSchedule sched = build_schedule(inst);
  const std::size_t m = sched.point_count();
  const std::size_t omega = max_active_width(sched);
  if (omega > 62) throw WidthError(omega);

  // Sweep state: free set L (begins appended in schedule order, ends
  // removed stably), base signs (+1 until an interval's narrowed endpoint
  // has been passed, -1 afterwards), running variance statistics.
  std::vector<std::uint32_t> L;
  L.reserve(omega);
  std::vector<std::int8_t> signs(n, 1);
  VarianceState state = state_init_upper(inst);

  double best = state.value();
  // Address of the best vertex: sweep point index and Gray step within it.
  // point = m means the initial all-upper vertex.
  std::size_t best_point = m;
  std::uint64_t best_step = 0;
  std::uint64_t vertices = 1;

  for (std::size_t k = 0; k < m; ++k) {
    for (std::uint32_t i : sched.begins(k)) L.push_back(i);
    traverse_free(std::span<const std::uint32_t>{L}, state, inst,
                  std::span<std::int8_t>{signs},
                  [&](std::uint64_t step, std::size_t, double value) {
                    if (value > best) {
                      best = value;
                      best_point = k;
                      best_step = step;
                    }
                  });
    vertices += std::uint64_t{1} << L.size();
    for (std::uint32_t i : sched.ends(k)) {
      erase_stable(L, i);
      state_flip(state, inst, i, -1);
      signs[i] = -1;
    }
  }

  // Rebuild the argmax sign vector by replaying the sweep bookkeeping up to
  // the recorded address. Only sign flips are replayed (no statistics), so
  // this costs at most one extra pass over the schedule plus one
  // enumeration's worth of flips.
  SolveResult res;
  res.argmax_signs.signs.assign(n, 1);
  if (best_point < m) {
    std::vector<std::uint32_t> replay;
    replay.reserve(omega);
    for (std::size_t k = 0; k <= best_point; ++k) {
      for (std::uint32_t i : sched.begins(k)) replay.push_back(i);
      if (k == best_point) {
        const std::size_t width = replay.size();
        for (std::uint64_t step = 1; step <= best_step; ++step) {
          const std::size_t pos = std::min<std::size_t>(
              static_cast<std::size_t>(std::countr_zero(step)), width - 1);
          auto& s = res.argmax_signs.signs[replay[pos]];
          s = static_cast<std::int8_t>(-s);
        }
        break;
      }
      for (std::uint32_t i : sched.ends(k)) {
        erase_stable(replay, i);
        res.argmax_signs.signs[i] = -1;
      }
    }
  }

  res.max_variance = variance_direct(inst, res.argmax_signs);
  res.omega_observed = omega;
  res.schedule_points = m;
  res.vertices_examined = vertices;
  res.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

}  // namespace varbound
