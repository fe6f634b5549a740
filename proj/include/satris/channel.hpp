// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

namespace satris {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

using ComplexGain = std::complex<double>;

// Static scenario geometry for one satellite downlink assisted by a
// reflecting surface. Angles are radians, distances meters, frequencies Hz.
struct ScenarioGeometry {
  double d1 = 3.5786e7;  // satellite -> terminal direct distance
  double d2 = 3.5786e7;  // satellite -> surface distance
  double d3 = 500.0;     // surface -> terminal distance
  double psi = 1.0471975511965976;  // incidence angle at the surface, [0, pi/2]
  double carrier_freq = 1.5e9;
  double subcarrier_bandwidth = 1.0e7;
  std::size_t num_subcarriers = 8;
  double phi = 0.0;  // satellite antenna phase

  void validate() const;
};

// Linear (not dB) power gains of the two antennas involved.
struct AntennaGains {
  double sat_beam_gain = 151356.12484362082;     // 51.8 dBi
  double ground_gain = 0.044668359215096312;     // -13.5 dB

  void validate() const;
};

struct RisPanel {
  std::size_t num_elements = 8;  // 0 models the conventional no-surface system
  double width = 1.0;            // meters
  double length = 1.0;           // meters

  void validate() const;
};

double db_to_linear(double value_db);

// Center frequency of subcarrier m (1-based) on a uniform grid centered on
// the carrier: f_m = carrier + (m - (M+1)/2) * bandwidth.
double subcarrier_frequency(const ScenarioGeometry& geom, std::size_t m);
double subcarrier_wavelength(const ScenarioGeometry& geom, std::size_t m);

// Satellite -> surface complex gain on subcarrier m; identical for every
// surface element. Magnitude is free-space path loss over d2, phase is -phi.
ComplexGain sat_to_ris_gain(const ScenarioGeometry& geom,
                            const AntennaGains& gains, std::size_t m);

// Surface -> terminal real gain on subcarrier m: aperture over d3 scaled by
// cos^2 of the incidence angle. Identical for every element.
double ris_to_ground_gain(const ScenarioGeometry& geom,
                          const AntennaGains& gains, const RisPanel& panel,
                          std::size_t m);

// Direct satellite -> terminal real gain on subcarrier m.
double direct_gain(const ScenarioGeometry& geom, const AntennaGains& gains,
                   std::size_t m);

}  // namespace satris
