// SPDX-License-Identifier: Apache-2.0
#include "satris/baselines.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "satris/rng.hpp"

using namespace satris;

namespace {

// Single-subcarrier link with controllable direct/reflected split.
LinkRealization one_carrier_link(double f, std::vector<ComplexGain> g,
                                 std::vector<double> h) {
  LinkRealization link;
  link.noise_variance = 1.0;
  link.direct = {f};
  link.sat_to_ris = std::move(g);
  link.ris_to_ground = std::move(h);
  return link;
}

}  // namespace

TEST_CASE("equal power splits the budget exactly") {
  const PowerAllocation p = equal_power(1.0, 3);
  REQUIRE_EQ(p.powers.size(), 3);
  CHECK_EQ(p.budget, 1.0);
  CHECK_EQ(p.total(), 1.0);  // exact despite 1/3 being inexact
  CHECK(std::abs(p.powers[0] - 1.0 / 3.0) < 1e-15);
  CHECK_NOTHROW(p.validate());

  for (std::size_t m : {1u, 2u, 5u, 7u, 64u}) {
    const PowerAllocation q = equal_power(140.0, m);
    CHECK_EQ(q.total(), 140.0);
    CHECK_NOTHROW(q.validate());
  }

  CHECK_EQ(equal_power(0.0, 4).total(), 0.0);
  CHECK_THROWS_AS((void)equal_power(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)equal_power(-1.0, 2), std::invalid_argument);
}

TEST_CASE("water filling matches the two-channel closed form") {
  // Inverse gains 1 and 1/4; both channels active at budget 1.
  const WaterFillingResult wf = water_filling({1.0, 4.0}, 1.0, 1.0);
  CHECK_EQ(wf.water_level, 1.125);
  REQUIRE_EQ(wf.allocation.powers.size(), 2);
  CHECK_EQ(wf.allocation.powers[0], 0.125);
  CHECK_EQ(wf.allocation.powers[1], 0.875);
  CHECK_EQ(wf.allocation.total(), 1.0);
  CHECK_EQ(wf.active_channels, 2);
}

TEST_CASE("water filling drops channels below the water line") {
  // Channel 2 is 100x weaker; at a small budget it gets nothing.
  const WaterFillingResult wf = water_filling({1.0, 0.01}, 1.0, 0.5);
  CHECK_EQ(wf.allocation.powers[0], 0.5);
  CHECK_EQ(wf.allocation.powers[1], 0.0);
  CHECK_EQ(wf.active_channels, 1);
  CHECK_EQ(wf.water_level, 1.5);  // noise/gain + budget on the lone channel

  // A large enough budget brings it back.
  const WaterFillingResult big = water_filling({1.0, 0.01}, 1.0, 200.0);
  CHECK(big.allocation.powers[1] > 0.0);
  CHECK_EQ(big.active_channels, 2);
}

TEST_CASE("water filling handles uniform gains and edge budgets") {
  const WaterFillingResult wf = water_filling({2.0, 2.0, 2.0, 2.0}, 1.0, 3.0);
  for (double p : wf.allocation.powers) CHECK_EQ(p, 0.75);

  const WaterFillingResult zero = water_filling({1.0, 2.0}, 1.0, 0.0);
  CHECK_EQ(zero.allocation.total(), 0.0);

  const WaterFillingResult single = water_filling({0.7}, 2.0, 5.0);
  CHECK_EQ(single.allocation.powers[0], 5.0);
}

TEST_CASE("water filling keeps KKT residuals tiny at satcom scales") {
  // Inverse gains around 1e12 dwarf the budget; the difference form keeps
  // the allocation exact instead of cancelling catastrophically.
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m_count = 1 + trial % 12;
    std::vector<double> gains(m_count);
    for (double& g : gains) g = 1e-12 * (0.5 + rng.uniform());
    const double noise = 0.01;
    const double budget = 140.0;
    const WaterFillingResult wf = water_filling(gains, noise, budget);
    CHECK(std::abs(wf.allocation.total() - budget) <= 1e-9 * budget);
    for (std::size_t m = 0; m < m_count; ++m) {
      const double a = noise / gains[m];
      const double p = wf.allocation.powers[m];
      CHECK(p >= 0.0);
      if (p > 0.0) {
        // Active channels share a common water level.
        CHECK(std::abs((a + p) - wf.water_level) <=
              1e-9 * std::abs(wf.water_level));
      } else {
        CHECK(a >= wf.water_level - 1e-9 * std::abs(wf.water_level));
      }
    }
    CHECK_NOTHROW(wf.allocation.validate());
  }
}

TEST_CASE("water filling beats equal power on lopsided channels") {
  const std::vector<double> gains{5.0, 0.2, 1.0};
  const double noise = 1.0;
  const double budget = 2.0;
  const WaterFillingResult wf = water_filling(gains, noise, budget);
  const PowerAllocation eq = equal_power(budget, 3);
  double c_wf = 0.0;
  double c_eq = 0.0;
  for (std::size_t m = 0; m < 3; ++m) {
    c_wf += std::log2(1.0 + gains[m] * wf.allocation.powers[m] / noise);
    c_eq += std::log2(1.0 + gains[m] * eq.powers[m] / noise);
  }
  CHECK(c_wf > c_eq);
}

TEST_CASE("water filling input validation") {
  CHECK_THROWS_AS((void)water_filling({}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)water_filling({1.0}, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)water_filling({1.0}, 1.0, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)water_filling({-1.0}, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)water_filling({0.0, 0.0}, 1.0, 1.0),
                  std::domain_error);
}

TEST_CASE("aligned phases rotate every term onto the direct path") {
  const LinkRealization link = one_carrier_link(
      2.0,
      {std::polar(1.0, 0.7), std::polar(0.5, -2.1), std::polar(0.25, 3.0)},
      {1.0, 2.0, 1.0});
  const RisConfiguration aligned = aligned_phases_single_carrier(link);
  REQUIRE_EQ(aligned.size(), 3);
  for (double a : aligned.amplitudes) CHECK_EQ(a, 1.0);
  for (double t : aligned.phases) {
    CHECK(t >= 0.0);
    CHECK(t < kTwoPi);
  }

  const ComplexGain h = effective_channel(link, aligned, 1);
  const double bound = 2.0 + 1.0 + 0.5 * 2.0 + 0.25;  // f + sum |g| h
  CHECK(std::abs(h.real() - bound) <= 1e-12 * bound);
  CHECK(std::abs(h.imag()) <= 1e-12 * bound);

  // Any single-phase perturbation can only lose magnitude.
  for (std::size_t k = 0; k < 3; ++k) {
    RisConfiguration worse = aligned;
    worse.phases[k] = wrap_angle(worse.phases[k] + 0.3);
    CHECK(std::abs(effective_channel(link, worse, 1)) <= std::abs(h));
  }
}

TEST_CASE("aligned phases track a negative direct path") {
  const LinkRealization link =
      one_carrier_link(-1.5, {std::polar(0.4, 1.1)}, {1.0});
  const RisConfiguration aligned = aligned_phases_single_carrier(link);
  const ComplexGain h = effective_channel(link, aligned, 1);
  CHECK(std::abs(std::abs(h) - 1.9) <= 1e-12);
  CHECK(h.real() < 0.0);  // reflected term joins the direct path's sign
}

TEST_CASE("aligned phases require a single subcarrier") {
  LinkRealization link = one_carrier_link(1.0, {ComplexGain{1.0, 0.0}}, {1.0});
  link.direct = {1.0, 1.0};
  link.sat_to_ris = {ComplexGain{1.0, 0.0}, ComplexGain{1.0, 0.0}};
  link.ris_to_ground = {1.0, 1.0};
  CHECK_THROWS_AS((void)aligned_phases_single_carrier(link),
                  std::invalid_argument);
}

TEST_CASE("brute force finds the grid point nearest alignment") {
  // One element, alignment at exactly pi/2: the 4-level grid contains it.
  const LinkRealization link =
      one_carrier_link(1.0, {std::polar(0.5, -kTwoPi / 4.0)}, {1.0});
  PhaseGrid grid;
  grid.levels = 4;
  grid.dimensions = 1;

  std::vector<PowerAllocation> candidates(1);
  candidates[0].budget = 2.0;
  candidates[0].powers = {2.0};

  const BruteForceOutcome best = brute_force_best(
      link, grid, candidates, QosRequirement::none(1), 1.0, 2.0);
  REQUIRE(best.found);
  CHECK_EQ(best.ris.phases[0], kTwoPi / 4.0);

  const RisConfiguration aligned = aligned_phases_single_carrier(link);
  const double aligned_value =
      capacity(link, aligned, candidates[0], 1.0);
  CHECK(std::abs(best.value - aligned_value) <= 1e-12 * aligned_value);
}

TEST_CASE("brute force off-grid alignment picks the closest level") {
  // Alignment target pi/3 is off the 4-level grid; pi/2 is the closest
  // level and must win over 0, pi, 3pi/2.
  const LinkRealization link =
      one_carrier_link(1.0, {std::polar(0.8, -kTwoPi / 6.0)}, {1.0});
  PhaseGrid grid;
  grid.levels = 4;
  grid.dimensions = 1;
  std::vector<PowerAllocation> candidates(1);
  candidates[0].budget = 1.0;
  candidates[0].powers = {1.0};
  const BruteForceOutcome best = brute_force_best(
      link, grid, candidates, QosRequirement::none(1), 1.0, 1.0);
  REQUIRE(best.found);
  CHECK_EQ(best.ris.phases[0], kTwoPi / 4.0);
}

TEST_CASE("brute force with water-filled power matches known splits") {
  LinkRealization link;
  link.noise_variance = 1.0;
  link.direct = {1.0, 2.0};
  link.sat_to_ris = {ComplexGain{0.5, 0.0}, ComplexGain{0.25, 0.0}};
  link.ris_to_ground = {1.0, 1.0};
  PhaseGrid grid;
  grid.levels = 8;
  grid.dimensions = 1;
  const BruteForceOutcome best = brute_force_best(
      link, grid, {}, QosRequirement::none(2), 1.0, 3.0);
  REQUIRE(best.found);
  // Phase 0 maximizes both channel magnitudes simultaneously.
  CHECK_EQ(best.ris.phases[0], 0.0);
  const std::vector<double> gains{std::norm(ComplexGain{1.5, 0.0}),
                                  std::norm(ComplexGain{2.25, 0.0})};
  const WaterFillingResult wf = water_filling(gains, 1.0, 3.0);
  CHECK_EQ(best.power.powers[0], wf.allocation.powers[0]);
  CHECK_EQ(best.power.powers[1], wf.allocation.powers[1]);
}

TEST_CASE("brute force reports infeasibility") {
  const LinkRealization link =
      one_carrier_link(0.1, {ComplexGain{0.01, 0.0}}, {1.0});
  PhaseGrid grid;
  grid.levels = 4;
  grid.dimensions = 1;
  QosRequirement qos;
  qos.min_snr = {1e12};  // unreachable with these gains
  const BruteForceOutcome best =
      brute_force_best(link, grid, {}, qos, 1.0, 1.0);
  CHECK_FALSE(best.found);
  CHECK_EQ(best.value, 0.0);
}

TEST_CASE("brute force respects the evaluation cap") {
  const LinkRealization link = one_carrier_link(
      1.0, {ComplexGain{0.5, 0.0}, ComplexGain{0.5, 0.0}}, {1.0, 1.0});
  PhaseGrid grid;
  grid.levels = 1024;
  grid.dimensions = 2;  // 2^20 combinations
  grid.max_grid_evaluations = 1e5;
  CHECK_THROWS_AS((void)brute_force_best(link, grid, {},
                                         QosRequirement::none(1), 1.0, 1.0),
                  std::runtime_error);
}

TEST_CASE("grid validation") {
  PhaseGrid grid;
  grid.levels = 0;
  CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
  grid = PhaseGrid{};
  grid.max_grid_evaluations = 0.0;
  CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
}

TEST_CASE("no-surface capacity equals switching every element off") {
  LinkRealization link;
  link.noise_variance = 0.25;
  link.direct = {0.5, 1.5, 1.0};
  link.sat_to_ris.assign(6, ComplexGain{0.3, 0.1});
  link.ris_to_ground.assign(6, 0.7);
  PowerAllocation power;
  power.budget = 6.0;
  power.powers = {1.0, 2.0, 3.0};
  const double direct_only = no_ris_capacity(link, power, 2.0e6);
  const double off = capacity(link, RisConfiguration::off(2), power, 2.0e6);
  CHECK_EQ(direct_only, off);
  CHECK(direct_only > 0.0);
}
