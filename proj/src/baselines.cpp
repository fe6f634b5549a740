// SPDX-License-Identifier: Apache-2.0
#include "satris/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace satris {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double arg_of_real(double x) {
  return x < 0.0 ? 3.1415926535897932384626433832795 : 0.0;
}

}  // namespace

void PhaseGrid::validate() const {
  if (levels < 2) throw std::invalid_argument("PhaseGrid: levels must be >= 2");
  if (!(max_grid_evaluations >= 1.0)) {
    throw std::invalid_argument("PhaseGrid: max_grid_evaluations must be >= 1");
  }
}

PowerAllocation equal_power(double budget, std::size_t num_subcarriers) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("equal_power: budget must be >= 0 and finite");
  }
  if (num_subcarriers < 1) {
    throw std::invalid_argument("equal_power: need at least one subcarrier");
  }
  PowerAllocation out;
  out.budget = budget;
  out.powers.assign(num_subcarriers, budget / num_subcarriers);
  // budget/M is inexact for e.g. M=3; recompute the last entry so the total
  // matches the budget bit-exactly.
  if (num_subcarriers > 1) {
    double head = 0.0;
    for (std::size_t m = 0; m + 1 < num_subcarriers; ++m) head += out.powers[m];
    out.powers.back() = budget - head;
  } else {
    out.powers.back() = budget;
  }
  return out;
}

WaterFillingResult water_filling(const std::vector<double>& channel_gains,
                                 double noise_variance, double budget) {
  if (channel_gains.empty()) {
    throw std::invalid_argument("water_filling: need at least one channel");
  }
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw std::invalid_argument("water_filling: noise_variance must be > 0");
  }
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("water_filling: budget must be >= 0");
  }
  bool any_positive = false;
  for (double g : channel_gains) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument(
          "water_filling: gains must be finite and >= 0");
    }
    any_positive = any_positive || g > 0.0;
  }
  if (!any_positive) {
    throw std::domain_error("water_filling: all channel gains are zero");
  }

  const std::size_t m_count = channel_gains.size();
  std::vector<double> a(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    a[m] = channel_gains[m] > 0.0 ? noise_variance / channel_gains[m] : kInf;
  }
  std::vector<std::size_t> order(m_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t x, std::size_t y) { return a[x] < a[y]; });

  std::size_t finite_count = 0;
  for (std::size_t idx : order) {
    if (std::isfinite(a[idx])) ++finite_count;
  }

  // Largest active-set size j whose water level keeps every active power
  // non-negative. The level only rises as channels are added while valid.
  std::size_t best_j = 1;
  double prefix = 0.0;
  double level = budget + a[order[0]];
  for (std::size_t j = 1; j <= finite_count; ++j) {
    prefix += a[order[j - 1]];
    const double mu = (budget + prefix) / static_cast<double>(j);
    if (mu >= a[order[j - 1]]) {
      best_j = j;
      level = mu;
    }
  }

  WaterFillingResult result;
  result.allocation.budget = budget;
  result.allocation.powers.assign(m_count, 0.0);
  result.water_level = level;

  // Difference form: p_i = (budget + sum_{l active}(a_l - a_i)) / j. The
  // direct mu - a_i cancels catastrophically when the offsets dwarf the
  // budget (satellite links: a ~ 1e12, budget ~ 1e2).
  for (std::size_t i = 0; i < best_j; ++i) {
    double acc = budget;
    for (std::size_t l = 0; l < best_j; ++l) {
      acc += a[order[l]] - a[order[i]];
    }
    result.allocation.powers[order[i]] =
        std::max(0.0, acc / static_cast<double>(best_j));
  }

  // Pin the total to the budget: park the rounding residual on the
  // strongest channel, then nudge below the budget if the sum still
  // overshoots by an ulp.
  double total = result.allocation.total();
  result.allocation.powers[order[0]] += budget - total;
  if (result.allocation.powers[order[0]] < 0.0) {
    result.allocation.powers[order[0]] = 0.0;
  }
  for (int guard = 0; guard < 4; ++guard) {
    total = result.allocation.total();
    if (total <= budget) break;
    result.allocation.powers[order[0]] =
        std::nextafter(result.allocation.powers[order[0]], 0.0);
  }

  result.active_channels = 0;
  for (double p : result.allocation.powers) {
    if (p > 0.0) ++result.active_channels;
  }
  return result;
}

RisConfiguration aligned_phases_single_carrier(const LinkRealization& link) {
  link.validate();
  if (link.num_subcarriers() != 1) {
    throw std::invalid_argument(
        "aligned_phases_single_carrier: link must have exactly one "
        "subcarrier");
  }
  const std::size_t k_count = link.num_elements();
  const double target = arg_of_real(link.direct[0]);
  RisConfiguration ris;
  ris.amplitudes.assign(k_count, 1.0);
  ris.phases.resize(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    const double cascade =
        std::arg(link.sat_to_ris[k]) + arg_of_real(link.ris_to_ground[k]);
    ris.phases[k] = wrap_angle(target - cascade);
  }
  return ris;
}

BruteForceOutcome brute_force_best(
    const LinkRealization& link, const PhaseGrid& grid,
    const std::vector<PowerAllocation>& power_candidates,
    const QosRequirement& qos, double bandwidth, double budget) {
  link.validate();
  grid.validate();
  qos.validate();
  const std::size_t m_count = link.num_subcarriers();
  const std::size_t k_count = link.num_elements();
  if (grid.dimensions != k_count) {
    throw std::invalid_argument(
        "brute_force_best: grid dimensions must equal the element count");
  }
  if (qos.min_snr.size() != m_count) {
    throw std::invalid_argument(
        "brute_force_best: qos length must equal the subcarrier count");
  }
  if (power_candidates.empty() && (!(budget >= 0.0) || !std::isfinite(budget))) {
    throw std::invalid_argument(
        "brute_force_best: water-filled mode needs a finite budget >= 0");
  }
  const double combos =
      std::pow(static_cast<double>(grid.levels), static_cast<double>(k_count));
  const double per_combo =
      power_candidates.empty() ? 1.0
                               : static_cast<double>(power_candidates.size());
  if (combos * per_combo > grid.max_grid_evaluations) {
    throw std::runtime_error(
        "brute_force_best: grid size exceeds max_grid_evaluations");
  }

  BruteForceOutcome best;
  std::vector<std::size_t> digits(k_count, 0);
  std::vector<double> best_key;  // (powers, phases) of the current best
  const double phase_step = kTwoPi / static_cast<double>(grid.levels);

  auto consider = [&](const RisConfiguration& ris, const PowerAllocation& pw) {
    if (!check_feasibility(link, ris, pw, qos).feasible()) return;
    const double value = capacity(link, ris, pw, bandwidth);
    std::vector<double> key;
    key.reserve(m_count + k_count);
    key.insert(key.end(), pw.powers.begin(), pw.powers.end());
    key.insert(key.end(), ris.phases.begin(), ris.phases.end());
    const bool take =
        !best.found || value > best.value ||
        (value == best.value &&
         std::lexicographical_compare(key.begin(), key.end(),
                                      best_key.begin(), best_key.end()));
    if (take) {
      best.found = true;
      best.ris = ris;
      best.power = pw;
      best.value = value;
      best_key = std::move(key);
    }
  };

  bool done = false;
  while (!done) {
    RisConfiguration ris;
    ris.amplitudes.assign(k_count, 1.0);
    ris.phases.resize(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
      ris.phases[k] = phase_step * static_cast<double>(digits[k]);
    }
    if (power_candidates.empty()) {
      std::vector<double> gains(m_count);
      bool any = false;
      for (std::size_t m = 1; m <= m_count; ++m) {
        gains[m - 1] = std::norm(effective_channel(link, ris, m));
        any = any || gains[m - 1] > 0.0;
      }
      PowerAllocation pw;
      if (any) {
        pw = water_filling(gains, link.noise_variance, budget).allocation;
      } else {
        pw.budget = budget;
        pw.powers.assign(m_count, 0.0);
      }
      consider(ris, pw);
    } else {
      for (const PowerAllocation& pw : power_candidates) {
        if (pw.powers.size() != m_count) {
          throw std::invalid_argument(
              "brute_force_best: power candidate length mismatch");
        }
        consider(ris, pw);
      }
    }
    // Odometer over phase digits; the last element varies fastest.
    done = true;
    for (std::size_t k = k_count; k-- > 0;) {
      if (++digits[k] < grid.levels) {
        done = false;
        break;
      }
      digits[k] = 0;
    }
  }
  return best;
}

double no_ris_capacity(const LinkRealization& link,
                       const PowerAllocation& power, double bandwidth) {
  link.validate();
  if (power.powers.size() != link.num_subcarriers()) {
    throw std::invalid_argument(
        "no_ris_capacity: power length must equal the subcarrier count");
  }
  double c = 0.0;
  for (std::size_t m = 0; m < link.num_subcarriers(); ++m) {
    const double f = link.direct[m];
    const double gamma = f * f * power.powers[m] / link.noise_variance;
    c += bandwidth * std::log2(1.0 + gamma);
  }
  return c;
}

}  // namespace satris
