// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "satris/channel.hpp"

namespace satris {

// Reflection coefficients of the surface: element k applies
// amplitudes[k] * exp(i * phases[k]) to the impinging signal.
struct RisConfiguration {
  std::vector<double> amplitudes;
  std::vector<double> phases;  // canonically in [0, 2*pi)

  std::size_t size() const { return amplitudes.size(); }

  // All amplitudes `amplitude`, all phases `phase` (wrapped).
  static RisConfiguration uniform(std::size_t num_elements,
                                  double amplitude = 1.0, double phase = 0.0);
  // Surface switched off: all amplitudes zero.
  static RisConfiguration off(std::size_t num_elements);

  // Wraps every phase into [0, 2*pi).
  void canonicalize();
  void validate() const;
};

struct PowerAllocation {
  std::vector<double> powers;  // watts, one per subcarrier
  double budget = 0.0;         // total transmit power p_t, watts

  double total() const;
  void validate() const;
};

// One channel draw: every deterministic gain the signal model consumes.
// Arrays are row-major M x K; m and k accessors are 1-based.
struct LinkRealization {
  std::vector<ComplexGain> sat_to_ris;  // g, M x K
  std::vector<double> ris_to_ground;    // h, M x K
  std::vector<double> direct;           // f, M
  double noise_variance = 0.01;

  std::size_t num_subcarriers() const { return direct.size(); }
  std::size_t num_elements() const {
    return direct.empty() ? 0 : sat_to_ris.size() / direct.size();
  }
  ComplexGain sat_gain(std::size_t m, std::size_t k) const;
  double ground_gain(std::size_t m, std::size_t k) const;
  double direct_path(std::size_t m) const;

  void validate() const;
};

struct QosRequirement {
  std::vector<double> min_snr;  // linear SNR floor per subcarrier, >= 0

  static QosRequirement none(std::size_t num_subcarriers);
  void validate() const;
};

// Per-constraint violation magnitudes; all-zero means feasible.
struct FeasibilityReport {
  std::vector<double> qos_violations;        // max(0, min_snr - snr), per m
  double budget_violation = 0.0;             // max(0, sum p - budget)
  std::vector<double> power_violations;      // max(0, -p_m), per m
  std::vector<double> amplitude_violations;  // distance from [0, 1], per k

  bool feasible() const;
  double total_violation() const;
};

// H_m = sum_k g_{m,k} a_k e^{i theta_k} h_{m,k} + f_m  (m is 1-based).
ComplexGain effective_channel(const LinkRealization& link,
                              const RisConfiguration& ris, std::size_t m);

// |H_m|^2 p_m / noise_variance.
double snr(const LinkRealization& link, const RisConfiguration& ris,
           const PowerAllocation& power, std::size_t m);

// sum_m bandwidth * log2(1 + snr_m), bits/second.
double capacity(const LinkRealization& link, const RisConfiguration& ris,
                const PowerAllocation& power, double bandwidth);

// sum_m |H_m|^2 p_m: the received-power objective, an alternative
// optimization target to capacity.
double objective_eq6(const LinkRealization& link, const RisConfiguration& ris,
                     const PowerAllocation& power);

FeasibilityReport check_feasibility(const LinkRealization& link,
                                    const RisConfiguration& ris,
                                    const PowerAllocation& power,
                                    const QosRequirement& qos);

// Wraps an angle into [0, 2*pi).
double wrap_angle(double radians);

}  // namespace satris
