// SPDX-License-Identifier: Apache-2.0
#include "satris/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace satris {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_subcarrier_index(const ScenarioGeometry& geom, std::size_t m) {
  if (m < 1 || m > geom.num_subcarriers) {
    throw std::out_of_range("subcarrier index " + std::to_string(m) +
                            " out of range [1, " +
                            std::to_string(geom.num_subcarriers) + "]");
  }
}

}  // namespace

void ScenarioGeometry::validate() const {
  require(std::isfinite(d1) && d1 > 0.0, "ScenarioGeometry: d1 must be > 0");
  require(std::isfinite(d2) && d2 > 0.0, "ScenarioGeometry: d2 must be > 0");
  require(std::isfinite(d3) && d3 > 0.0, "ScenarioGeometry: d3 must be > 0");
  require(std::isfinite(psi) && psi >= 0.0 && psi <= std::numbers::pi / 2.0,
          "ScenarioGeometry: psi must lie in [0, pi/2]");
  require(std::isfinite(carrier_freq) && carrier_freq > 0.0,
          "ScenarioGeometry: carrier_freq must be > 0");
  require(std::isfinite(subcarrier_bandwidth) && subcarrier_bandwidth > 0.0,
          "ScenarioGeometry: subcarrier_bandwidth must be > 0");
  require(num_subcarriers >= 1,
          "ScenarioGeometry: num_subcarriers must be >= 1");
  require(std::isfinite(phi), "ScenarioGeometry: phi must be finite");
}

void AntennaGains::validate() const {
  require(std::isfinite(sat_beam_gain) && sat_beam_gain > 0.0,
          "AntennaGains: sat_beam_gain must be positive and finite");
  require(std::isfinite(ground_gain) && ground_gain > 0.0,
          "AntennaGains: ground_gain must be positive and finite");
}

void RisPanel::validate() const {
  require(std::isfinite(width) && width > 0.0, "RisPanel: width must be > 0");
  require(std::isfinite(length) && length > 0.0,
          "RisPanel: length must be > 0");
}

double db_to_linear(double value_db) {
  if (!std::isfinite(value_db)) {
    throw std::invalid_argument("db_to_linear: value must be finite");
  }
  return std::pow(10.0, value_db / 10.0);
}

double subcarrier_frequency(const ScenarioGeometry& geom, std::size_t m) {
  geom.validate();
  check_subcarrier_index(geom, m);
  const double offset =
      static_cast<double>(m) -
      (static_cast<double>(geom.num_subcarriers) + 1.0) / 2.0;
  return geom.carrier_freq + offset * geom.subcarrier_bandwidth;
}

double subcarrier_wavelength(const ScenarioGeometry& geom, std::size_t m) {
  const double f = subcarrier_frequency(geom, m);
  if (f <= 0.0) {
    throw std::domain_error(
        "subcarrier_wavelength: subcarrier grid reaches a non-positive "
        "frequency; reduce num_subcarriers or subcarrier_bandwidth");
  }
  return kSpeedOfLight / f;
}

ComplexGain sat_to_ris_gain(const ScenarioGeometry& geom,
                            const AntennaGains& gains, std::size_t m) {
  gains.validate();
  const double lambda = subcarrier_wavelength(geom, m);
  const double magnitude = std::sqrt(gains.sat_beam_gain) /
                           (4.0 * std::numbers::pi * geom.d2 / lambda);
  return std::polar(magnitude, -geom.phi);
}

double ris_to_ground_gain(const ScenarioGeometry& geom,
                          const AntennaGains& gains, const RisPanel& panel,
                          std::size_t m) {
  gains.validate();
  panel.validate();
  geom.validate();
  check_subcarrier_index(geom, m);
  const double c = std::cos(geom.psi);
  return std::sqrt(gains.ground_gain) * panel.width * panel.length / geom.d3 *
         c * c;
}

double direct_gain(const ScenarioGeometry& geom, const AntennaGains& gains,
                   std::size_t m) {
  gains.validate();
  const double lambda = subcarrier_wavelength(geom, m);
  return std::sqrt(gains.sat_beam_gain * gains.ground_gain) /
         (4.0 * std::numbers::pi * geom.d1 / lambda);
}

}  // namespace satris
