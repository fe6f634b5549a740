// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "satris/signal.hpp"

namespace satris {

// Uniform phase grid for exhaustive search: each phase takes one of
// `levels` values spaced 2*pi/levels apart.
struct PhaseGrid {
  std::size_t levels = 16;
  std::size_t dimensions = 0;
  double max_grid_evaluations = 1e7;

  void validate() const;
};

struct BruteForceOutcome {
  bool found = false;  // false when no grid point is feasible
  RisConfiguration ris;
  PowerAllocation power;
  double value = 0.0;  // capacity at the best point, bits/s
};

struct WaterFillingResult {
  PowerAllocation allocation;
  double water_level = 0.0;
  std::size_t active_channels = 0;
};

// budget/M on every subcarrier; the sum equals the budget exactly.
PowerAllocation equal_power(double budget, std::size_t num_subcarriers);

// Allocation maximizing sum log2(1 + g_m p_m / noise) subject to the budget:
// p_m = max(0, mu - noise/g_m) with the water level mu chosen by an exact
// breakpoint scan. channel_gains are |H_m|^2.
WaterFillingResult water_filling(const std::vector<double>& channel_gains,
                                 double noise_variance, double budget);

// Closed-form phase alignment for a single-subcarrier link: rotates every
// reflected term onto the phase of the direct path, maximizing |H_1| over
// all unit-amplitude configurations.
RisConfiguration aligned_phases_single_carrier(const LinkRealization& link);

// Exhaustive search over the phase grid and the given power candidates,
// skipping infeasible points. An empty candidate list means water-filled
// power (with the given budget) per phase combination. Ties break toward the
// lexicographically smallest (powers, phases) vector.
BruteForceOutcome brute_force_best(
    const LinkRealization& link, const PhaseGrid& grid,
    const std::vector<PowerAllocation>& power_candidates,
    const QosRequirement& qos, double bandwidth, double budget);

// Capacity of the direct link alone (surface off).
double no_ris_capacity(const LinkRealization& link,
                       const PowerAllocation& power, double bandwidth);

}  // namespace satris
