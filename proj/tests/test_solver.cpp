#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "varbound/core.hpp"
#include "varbound/intgraph.hpp"
#include "varbound/oracle.hpp"
#include "varbound/solver.hpp"

using namespace varbound;

namespace {

Instance make(std::vector<double> lo, std::vector<double> hi) {
  return Instance::from_bounds(std::move(lo), std::move(hi));
}

SignVector signs_of(std::initializer_list<int> s) {
  SignVector v;
  for (int x : s) v.signs.push_back(static_cast<std::int8_t>(x));
  return v;
}

std::vector<std::uint32_t> to_vec(std::span<const std::uint32_t> s) {
  return {s.begin(), s.end()};
}

// Adversarial mix: duplicate endpoints, zero radii, far-apart clusters,
// negative values. `allow_offset` adds a 1e6 shift to a quarter of the
// instances, useful for stressing bookkeeping, but it conditions the
// v1 - v2^2 identity at ~1e-4 absolute, so tests that compare running
// values against direct evaluation at 1e-9 must stay offset-free (the
// instance generators this project studies produce O(1) values).
Instance random_adversarial(std::mt19937_64& rng, std::size_t n,
                            bool allow_offset = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> lo(n), hi(n);
  const double offset = (allow_offset && rng() % 4 == 0) ? 1e6 : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double c, r;
    if (rng() % 2) {
      c = 0.5 * static_cast<double>(rng() % 9) - 2.0;
      r = 0.5 * static_cast<double>(rng() % 4);
    } else {
      c = 20.0 * unit(rng) - 10.0;
      r = (rng() % 5 == 0) ? 0.0 : 3.0 * unit(rng);
    }
    lo[i] = c - r + offset;
    hi[i] = c + r + offset;
  }
  return Instance::from_bounds(std::move(lo), std::move(hi));
}

// Independent reccount of 1 + sum over sweep points of 2^(free set size).
std::uint64_t expected_vertices(const SweepSchedule& sched) {
  std::uint64_t total = 1;
  std::size_t active = 0;
  for (std::size_t k = 0; k < sched.point_count(); ++k) {
    active += sched.begins(k).size();
    total += std::uint64_t{1} << active;
    active -= sched.ends(k).size();
  }
  return total;
}

}  // namespace

TEST_CASE("build_schedule on identical intervals") {
  // both [0,1] narrow to [0.25, 0.75]: two sweep points, both coordinates
  // begin at the first and end at the second
  SweepSchedule s = build_schedule(make({0.0, 0.0}, {1.0, 1.0}));
  REQUIRE(s.point_count() == 2);
  CHECK(s.points[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.points[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(to_vec(s.begins(0)) == std::vector<std::uint32_t>{0, 1});
  CHECK(to_vec(s.ends(0)).empty());
  CHECK(to_vec(s.begins(1)).empty());
  CHECK(to_vec(s.ends(1)) == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("build_schedule on disjoint intervals") {
  SweepSchedule s = build_schedule(make({0.0, 10.0}, {1.0, 11.0}));
  REQUIRE(s.point_count() == 4);
  CHECK(s.points == std::vector<double>{0.25, 0.75, 10.25, 10.75});
  CHECK(to_vec(s.begins(0)) == std::vector<std::uint32_t>{0});
  CHECK(to_vec(s.ends(1)) == std::vector<std::uint32_t>{0});
  CHECK(to_vec(s.begins(2)) == std::vector<std::uint32_t>{1});
  CHECK(to_vec(s.ends(3)) == std::vector<std::uint32_t>{1});
}

TEST_CASE("build_schedule on a point interval") {
  SweepSchedule s = build_schedule(make({3.0}, {3.0}));
  REQUIRE(s.point_count() == 1);
  CHECK(s.points[0] == 3.0);
  CHECK(to_vec(s.begins(0)) == std::vector<std::uint32_t>{0});
  CHECK(to_vec(s.ends(0)) == std::vector<std::uint32_t>{0});
}

TEST_CASE("schedule invariants on random instances") {
  std::mt19937_64 rng(555u);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rep % 14;
    Instance inst = random_adversarial(rng, n, /*allow_offset=*/true);
    SweepSchedule s = build_schedule(inst);
    const std::size_t m = s.point_count();

    CHECK(m >= 1);
    CHECK(m <= 2 * n);
    for (std::size_t k = 1; k < m; ++k) CHECK(s.points[k - 1] < s.points[k]);

    // every coordinate begins exactly once and ends exactly once, and its
    // begin point is not after its end point
    std::vector<int> begin_at(n, -1), end_at(n, -1);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::uint32_t i : s.begins(k)) {
        CHECK(begin_at[i] == -1);
        begin_at[i] = static_cast<int>(k);
      }
      for (std::uint32_t i : s.ends(k)) {
        CHECK(end_at[i] == -1);
        end_at[i] = static_cast<int>(k);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(begin_at[i] >= 0);
      CHECK(end_at[i] >= begin_at[i]);
    }

    CHECK(max_active_width(s) == omega_sweep(inst));
  }
}

TEST_CASE("traverse_free walks a full Gray cycle and restores everything") {
  std::mt19937_64 rng(999u);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 12;
    Instance inst = random_adversarial(rng, n);
    const std::size_t k = 1 + rep % 10;

    // random base signs and a random free subset of size k
    std::vector<std::int8_t> signs(n);
    for (auto& s : signs) s = (rng() & 1) ? std::int8_t{1} : std::int8_t{-1};
    std::vector<std::uint32_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::uint32_t> free_idx(all.begin(), all.begin() + k);

    SignVector entry;
    entry.signs = signs;
    VarianceState state = state_init_upper(inst);
    for (std::size_t i = 0; i < n; ++i) {
      if (signs[i] < 0) state_flip(state, inst, i, -1);
    }
    const double v1_in = state.v1, v2_in = state.v2;

    auto pattern = [&]() {
      std::uint64_t p = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (signs[free_idx[j]] > 0) p |= std::uint64_t{1} << j;
      }
      return p;
    };
    const std::uint64_t entry_pattern = pattern();

    std::set<std::uint64_t> seen;
    std::uint64_t count = 0;
    std::uint64_t prev_pattern = entry_pattern;
    std::uint64_t last_pattern = ~std::uint64_t{0};
    traverse_free(std::span<const std::uint32_t>{free_idx}, state, inst,
                  std::span<std::int8_t>{signs},
                  [&](std::uint64_t step, std::size_t pos, double value) {
                    ++count;
                    const std::uint64_t p = pattern();
                    // exactly one free coordinate flipped, at the reported
                    // position
                    CHECK(std::popcount(p ^ prev_pattern) == 1);
                    CHECK(((p ^ prev_pattern) >> pos) == 1);
                    prev_pattern = p;
                    CHECK(seen.insert(p).second);
                    // running value stays glued to the direct evaluation
                    SignVector cur;
                    cur.signs.assign(signs.begin(), signs.end());
                    const double direct = variance_direct(inst, cur);
                    CHECK(std::abs(value - direct) <=
                          1e-9 * std::max(1.0, direct));
                    if (step == (std::uint64_t{1} << k)) last_pattern = p;
                  });

    CHECK(count == (std::uint64_t{1} << k));
    CHECK(seen.size() == count);      // all 2^k patterns, each once
    CHECK(last_pattern == entry_pattern);  // entry pattern visited last

    SignVector after;
    after.signs = signs;
    CHECK(after == entry);
    CHECK(std::abs(state.v1 - v1_in) <= 1e-12 * std::max(1.0, std::abs(v1_in)));
    CHECK(std::abs(state.v2 - v2_in) <= 1e-12 * std::max(1.0, std::abs(v2_in)));
  }
}

TEST_CASE("traverse_free on an empty free set visits nothing") {
  Instance inst = make({0.0, 0.0}, {1.0, 1.0});
  std::vector<std::int8_t> signs(2, 1);
  VarianceState state = state_init_upper(inst);
  int visits = 0;
  traverse_free({}, state, inst, std::span<std::int8_t>{signs},
                [&](std::uint64_t, std::size_t, double) { ++visits; });
  CHECK(visits == 0);
}

TEST_CASE("enumerate_free seeds with the incumbent and keeps the earliest max") {
  Instance inst = make({0.0, 0.0}, {1.0, 1.0});
  std::vector<std::int8_t> signs(2, 1);
  VarianceState state = state_init_upper(inst);
  std::vector<std::uint32_t> free_idx = {0, 1};

  // nothing beats an absurd incumbent
  FreeEnumeration none = enumerate_free(std::span<const std::uint32_t>{free_idx},
                                        state, inst, 1e9,
                                        std::span<std::int8_t>{signs});
  CHECK(none.best == 1e9);
  CHECK(!none.best_signs.has_value());
  CHECK(signs == std::vector<std::int8_t>{1, 1});

  // with a beatable incumbent, (-1,+1) is found first and the later tie
  // (+1,-1) does not replace it
  FreeEnumeration found = enumerate_free(
      std::span<const std::uint32_t>{free_idx}, state, inst, 0.2,
      std::span<std::int8_t>{signs});
  CHECK(found.best == doctest::Approx(0.25).epsilon(1e-15));
  REQUIRE(found.best_signs.has_value());
  CHECK(*found.best_signs == signs_of({-1, +1}));
}

TEST_CASE("solve_max_variance on the reference instances") {
  SolveResult far = solve_max_variance(make({0.0, 10.0}, {1.0, 11.0}));
  CHECK(far.max_variance == doctest::Approx(30.25).epsilon(1e-15));
  CHECK(far.argmax_signs == signs_of({-1, +1}));
  CHECK(far.omega_observed == 1);
  CHECK(far.schedule_points == 4);
  CHECK(far.vertices_examined == 9);
  CHECK(far.wall_time_seconds >= 0.0);

  SolveResult same = solve_max_variance(make({0.0, 0.0}, {1.0, 1.0}));
  CHECK(same.max_variance == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(same.argmax_signs == signs_of({-1, +1}));
  CHECK(same.omega_observed == 2);
  CHECK(same.schedule_points == 2);
  CHECK(same.vertices_examined == 9);

  // single point interval: variance 0, the initial all-upper vertex stands
  SolveResult pt = solve_max_variance(make({3.0}, {3.0}));
  CHECK(pt.max_variance == 0.0);
  CHECK(pt.argmax_signs == signs_of({+1}));
  CHECK(pt.omega_observed == 1);
  CHECK(pt.schedule_points == 1);
  CHECK(pt.vertices_examined == 3);
}

TEST_CASE("sweeping every endpoint beats filtering by the attainable-mean window") {
  // {[0,1],[10,11]}: the attainable means span [5,6] while every narrowed
  // endpoint (0.25, 0.75, 10.25, 10.75) lies outside that window. A sweep
  // that kept only points inside the window would never enumerate anything
  // and would sit at the all-upper value 25; the optimum is 30.25 at
  // (0, 11), whose mean 5.5 is inside the window even though no sweep
  // point is. Hence: sweep all 2n endpoints, unconditionally.
  Instance inst = make({0.0, 10.0}, {1.0, 11.0});
  const auto [mean_lo, mean_hi] = mean_bounds(inst);
  SweepSchedule sched = build_schedule(inst);
  for (double p : sched.points) {
    CHECK((p < mean_lo || p > mean_hi));
  }
  SolveResult res = solve_max_variance(inst);
  CHECK(res.max_variance == doctest::Approx(30.25).epsilon(1e-15));
  CHECK(res.max_variance > 25.0);
}

TEST_CASE("solver agrees with the brute-force oracle on random instances") {
  std::mt19937_64 rng(123456u);
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 1 + rep % 12;
    Instance inst = random_adversarial(rng, n);

    SolveResult fast = solve_max_variance(inst);
    OracleResult slow = brute_force_max(inst);

    CHECK(std::abs(fast.max_variance - slow.max_variance) <=
          1e-9 * std::max(1.0, slow.max_variance));
    // the reported value is exactly the direct evaluation of the reported
    // argmax (no enumeration drift can leak into the result)
    CHECK(fast.max_variance == variance_direct(inst, fast.argmax_signs));

    SweepSchedule sched = build_schedule(inst);
    CHECK(fast.omega_observed == omega_sweep(inst));
    CHECK(fast.schedule_points == sched.point_count());
    CHECK(fast.vertices_examined == expected_vertices(sched));
  }
}

TEST_CASE("tracked value matches direct evaluation across a 2^16 enumeration") {
  // 16 free coordinates out of 24, full Gray enumeration, spot-checked
  // against from-scratch evaluation every 4096 steps
  std::mt19937_64 rng(2024u);
  const std::size_t n = 24;
  Instance inst = random_adversarial(rng, n);
  std::vector<std::int8_t> signs(n, 1);
  VarianceState state = state_init_upper(inst);
  std::vector<std::uint32_t> free_idx;
  for (std::uint32_t i = 0; i < 16; ++i) free_idx.push_back(i);

  traverse_free(std::span<const std::uint32_t>{free_idx}, state, inst,
                std::span<std::int8_t>{signs},
                [&](std::uint64_t step, std::size_t, double value) {
                  if (step % 4096 != 0) return;
                  SignVector cur;
                  cur.signs.assign(signs.begin(), signs.end());
                  const double direct = variance_direct(inst, cur);
                  CHECK(std::abs(value - direct) <=
                        1e-9 * std::max(1.0, direct));
                });
}

TEST_CASE("free sets wider than 62 are refused up front") {
  // 63 identical intervals: every narrowed interval coincides, omega = 63
  std::vector<double> lo(63, 0.0), hi(63, 1.0);
  Instance inst = Instance::from_bounds(lo, hi);
  CHECK(omega_sweep(inst) == 63);

  CHECK_THROWS_AS(solve_max_variance(inst), WidthError);
  try {
    solve_max_variance(inst);
  } catch (const WidthError& e) {
    CHECK(e.omega == 63);
    CHECK(std::string(e.what()).find("62") != std::string::npos);
  }

  // the guard sits in the traversal itself as well
  std::vector<std::uint32_t> free_idx(63);
  for (std::uint32_t i = 0; i < 63; ++i) free_idx[i] = i;
  std::vector<std::int8_t> signs(63, 1);
  VarianceState state = state_init_upper(inst);
  CHECK_THROWS_AS(
      traverse_free(std::span<const std::uint32_t>{free_idx}, state, inst,
                    std::span<std::int8_t>{signs},
                    [](std::uint64_t, std::size_t, double) {}),
      WidthError);
  CHECK_THROWS_AS(
      enumerate_free(std::span<const std::uint32_t>{free_idx}, state, inst,
                     0.0, std::span<std::int8_t>{signs}),
      WidthError);
}
