// SPDX-License-Identifier: Apache-2.0
#include "satris/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace satris {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_shapes(const LinkRealization& link, const RisConfiguration& ris) {
  if (ris.amplitudes.size() != ris.phases.size()) {
    throw std::invalid_argument(
        "RisConfiguration: amplitudes and phases differ in length");
  }
  if (ris.size() != link.num_elements()) {
    throw std::invalid_argument(
        "RisConfiguration has " + std::to_string(ris.size()) +
        " elements, link has " + std::to_string(link.num_elements()));
  }
}

void check_power_shape(const LinkRealization& link,
                       const PowerAllocation& power) {
  if (power.powers.size() != link.num_subcarriers()) {
    throw std::invalid_argument(
        "PowerAllocation has " + std::to_string(power.powers.size()) +
        " entries, link has " + std::to_string(link.num_subcarriers()) +
        " subcarriers");
  }
}

}  // namespace

double wrap_angle(double radians) {
  double a = std::fmod(radians, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;  // fmod can land exactly on the period
  return a + 0.0;            // normalize -0.0
}

RisConfiguration RisConfiguration::uniform(std::size_t num_elements,
                                           double amplitude, double phase) {
  RisConfiguration ris;
  ris.amplitudes.assign(num_elements, amplitude);
  ris.phases.assign(num_elements, wrap_angle(phase));
  ris.validate();
  return ris;
}

RisConfiguration RisConfiguration::off(std::size_t num_elements) {
  return uniform(num_elements, 0.0, 0.0);
}

void RisConfiguration::canonicalize() {
  for (double& p : phases) p = wrap_angle(p);
}

void RisConfiguration::validate() const {
  require(amplitudes.size() == phases.size(),
          "RisConfiguration: amplitudes and phases differ in length");
  for (double a : amplitudes) {
    require(std::isfinite(a) && a >= 0.0 && a <= 1.0,
            "RisConfiguration: amplitudes must lie in [0, 1]");
  }
  for (double p : phases) {
    require(std::isfinite(p) && p >= 0.0 && p < kTwoPi,
            "RisConfiguration: phases must lie in [0, 2*pi)");
  }
}

double PowerAllocation::total() const {
  double s = 0.0;
  for (double p : powers) s += p;
  return s;
}

void PowerAllocation::validate() const {
  require(std::isfinite(budget) && budget >= 0.0,
          "PowerAllocation: budget must be >= 0");
  for (double p : powers) {
    require(std::isfinite(p) && p >= 0.0,
            "PowerAllocation: powers must be >= 0");
  }
  require(total() <= budget, "PowerAllocation: powers exceed the budget");
}

ComplexGain LinkRealization::sat_gain(std::size_t m, std::size_t k) const {
  const std::size_t kk = num_elements();
  if (m < 1 || m > num_subcarriers() || k < 1 || k > kk) {
    throw std::out_of_range("LinkRealization::sat_gain: index out of range");
  }
  return sat_to_ris[(m - 1) * kk + (k - 1)];
}

double LinkRealization::ground_gain(std::size_t m, std::size_t k) const {
  const std::size_t kk = num_elements();
  if (m < 1 || m > num_subcarriers() || k < 1 || k > kk) {
    throw std::out_of_range("LinkRealization::ground_gain: index out of range");
  }
  return ris_to_ground[(m - 1) * kk + (k - 1)];
}

double LinkRealization::direct_path(std::size_t m) const {
  if (m < 1 || m > num_subcarriers()) {
    throw std::out_of_range("LinkRealization::direct_path: index out of range");
  }
  return direct[m - 1];
}

void LinkRealization::validate() const {
  require(!direct.empty(), "LinkRealization: at least one subcarrier");
  const std::size_t m = direct.size();
  require(sat_to_ris.size() % m == 0 &&
              sat_to_ris.size() == ris_to_ground.size(),
          "LinkRealization: gain arrays must be M x K with matching sizes");
  require(std::isfinite(noise_variance) && noise_variance > 0.0,
          "LinkRealization: noise_variance must be > 0");
  for (const ComplexGain& g : sat_to_ris) {
    require(std::isfinite(g.real()) && std::isfinite(g.imag()),
            "LinkRealization: non-finite sat_to_ris entry");
  }
  for (double h : ris_to_ground) {
    require(std::isfinite(h), "LinkRealization: non-finite ris_to_ground entry");
  }
  for (double f : direct) {
    require(std::isfinite(f), "LinkRealization: non-finite direct entry");
  }
}

QosRequirement QosRequirement::none(std::size_t num_subcarriers) {
  QosRequirement q;
  q.min_snr.assign(num_subcarriers, 0.0);
  return q;
}

void QosRequirement::validate() const {
  for (double g : min_snr) {
    require(std::isfinite(g) && g >= 0.0,
            "QosRequirement: min_snr entries must be >= 0");
  }
}

bool FeasibilityReport::feasible() const { return total_violation() == 0.0; }

double FeasibilityReport::total_violation() const {
  double s = budget_violation;
  for (double v : qos_violations) s += v;
  for (double v : power_violations) s += v;
  for (double v : amplitude_violations) s += v;
  return s;
}

ComplexGain effective_channel(const LinkRealization& link,
                              const RisConfiguration& ris, std::size_t m) {
  check_shapes(link, ris);
  const std::size_t kk = link.num_elements();
  if (m < 1 || m > link.num_subcarriers()) {
    throw std::out_of_range("effective_channel: subcarrier index out of range");
  }
  const std::size_t row = (m - 1) * kk;
  ComplexGain reflected(0.0, 0.0);
  for (std::size_t k = 0; k < kk; ++k) {
    reflected += link.sat_to_ris[row + k] *
                 std::polar(ris.amplitudes[k], ris.phases[k]) *
                 link.ris_to_ground[row + k];
  }
  return reflected + link.direct[m - 1];
}

double snr(const LinkRealization& link, const RisConfiguration& ris,
           const PowerAllocation& power, std::size_t m) {
  check_power_shape(link, power);
  const ComplexGain h = effective_channel(link, ris, m);
  return std::norm(h) * power.powers[m - 1] / link.noise_variance;
}

double capacity(const LinkRealization& link, const RisConfiguration& ris,
                const PowerAllocation& power, double bandwidth) {
  check_power_shape(link, power);
  double c = 0.0;
  for (std::size_t m = 1; m <= link.num_subcarriers(); ++m) {
    c += bandwidth * std::log2(1.0 + snr(link, ris, power, m));
  }
  return c;
}

double objective_eq6(const LinkRealization& link, const RisConfiguration& ris,
                     const PowerAllocation& power) {
  check_power_shape(link, power);
  double s = 0.0;
  for (std::size_t m = 1; m <= link.num_subcarriers(); ++m) {
    s += std::norm(effective_channel(link, ris, m)) * power.powers[m - 1];
  }
  return s;
}

FeasibilityReport check_feasibility(const LinkRealization& link,
                                    const RisConfiguration& ris,
                                    const PowerAllocation& power,
                                    const QosRequirement& qos) {
  check_shapes(link, ris);
  check_power_shape(link, power);
  if (qos.min_snr.size() != link.num_subcarriers()) {
    throw std::invalid_argument(
        "QosRequirement length does not match the number of subcarriers");
  }
  FeasibilityReport report;
  const std::size_t m_count = link.num_subcarriers();
  report.qos_violations.resize(m_count, 0.0);
  report.power_violations.resize(m_count, 0.0);
  report.amplitude_violations.resize(ris.size(), 0.0);
  for (std::size_t m = 1; m <= m_count; ++m) {
    report.qos_violations[m - 1] =
        std::max(0.0, qos.min_snr[m - 1] - snr(link, ris, power, m));
    report.power_violations[m - 1] = std::max(0.0, -power.powers[m - 1]);
  }
  report.budget_violation = std::max(0.0, power.total() - power.budget);
  for (std::size_t k = 0; k < ris.size(); ++k) {
    const double a = ris.amplitudes[k];
    report.amplitude_violations[k] = std::max(0.0, -a) + std::max(0.0, a - 1.0);
  }
  return report;
}

}  // namespace satris
