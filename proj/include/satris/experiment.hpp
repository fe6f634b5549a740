// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "satris/baselines.hpp"
#include "satris/channel.hpp"
#include "satris/mads.hpp"
#include "satris/signal.hpp"

namespace satris {

enum class Metric { shannon_capacity, eq6_objective };
enum class Randomization { phase_only, none };

// Raised for config-file parse failures and invariant violations; the
// message carries line/field diagnostics.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full description of one experiment. Default-constructed values are the
// reference scenario: GEO downlink at 1.5 GHz, M=8 subcarriers of 10 MHz,
// 140 W budget, noise 0.01, 8-element 1 m x 1 m surface at 60 degrees.
struct ExperimentConfig {
  ScenarioGeometry geometry;
  AntennaGains gains;
  RisPanel panel;
  double budget = 140.0;          // total transmit power p_t, watts
  double noise_variance = 0.01;
  // Empty: no QoS floor. One entry: the same floor on every subcarrier.
  // Otherwise must have one entry per subcarrier.
  std::vector<double> min_snr;
  mads::MadsSettings optimizer;   // per-run optimizer settings
  Metric metric = Metric::shannon_capacity;
  Randomization randomization = Randomization::phase_only;
  std::size_t monte_carlo_runs = 1000;

  ExperimentConfig() { optimizer.max_evaluations = 5000; }

  QosRequirement qos() const;  // resolved per-subcarrier floors
  void validate() const;       // throws ConfigError listing offending fields
};

// Parses the flat `key = value` config text (# starts a comment). Unknown
// keys and malformed values are reported with line numbers; missing keys
// keep their defaults.
ExperimentConfig parse_config(std::istream& in, const std::string& origin);
ExperimentConfig load_config(const std::string& path);
// The config as config-file text (round-trips through parse_config).
std::string format_config(const ExperimentConfig& config);

struct RunOutcome {
  double capacity_bps = 0.0;
  double baseline_capacity_bps = 0.0;  // no-surface water-filled comparator
  std::size_t evaluations = 0;
  bool feasible = true;
};

struct ResultRecord {
  ExperimentConfig config;
  std::string axis_name = "none";
  double axis_value = 0.0;
  std::uint64_t seed = 0;
  std::vector<RunOutcome> runs;
  // Aggregates over feasible runs (capacity) / all runs (baseline,
  // evaluations). Population standard deviation.
  double mean_capacity_bps = 0.0;
  double std_capacity_bps = 0.0;
  double baseline_capacity_bps = 0.0;
  double evaluations_mean = 0.0;
  std::size_t infeasible_runs = 0;
};

// Channel draw for one Monte Carlo run: deterministic in (seed, run_index).
// Under phase-only randomization the satellite phase and one extra phase per
// surface element are uniform on [0, 2*pi); all magnitudes stay at their
// link-budget values.
LinkRealization draw_realization(const ExperimentConfig& config,
                                 std::uint64_t seed, std::uint64_t run_index);

// The joint power/phase maximization problem over n = M + K variables:
// powers in [0, budget], phases periodic over [0, 2*pi). Constraints: the
// power-sum budget and any positive QoS floors.
mads::BlackBoxProblem make_joint_problem(const LinkRealization& link,
                                         const QosRequirement& qos,
                                         double budget, double bandwidth,
                                         Metric metric);

RunOutcome run_single(const ExperimentConfig& config, std::uint64_t seed,
                      std::uint64_t run_index);
ResultRecord run_monte_carlo(const ExperimentConfig& config,
                             std::uint64_t seed);

enum class SweepAxis { subcarriers, elements, power };
enum class SweepComparison { ris_vs_conventional, element_counts,
                             power_levels };

struct SweepSpec {
  SweepAxis axis = SweepAxis::subcarriers;
  std::vector<double> values;  // strictly increasing, non-empty
  SweepComparison comparison = SweepComparison::ris_vs_conventional;

  void validate() const;
};

// One record per axis value, all sharing the seed so draws are common
// across the sweep (paired comparison).
std::vector<ResultRecord> run_sweep(const ExperimentConfig& config,
                                    const SweepSpec& sweep,
                                    std::uint64_t seed);

enum class EmitFormat { csv, json };

std::string format_results_csv(const std::vector<ResultRecord>& records);
std::string format_results_json(const std::vector<ResultRecord>& records);
// Reads back what format_results_json produced.
std::vector<ResultRecord> parse_results_json(const std::string& text);
// Writes to path; throws std::runtime_error on I/O failure.
void emit_results(const std::vector<ResultRecord>& records, EmitFormat format,
                  const std::string& path);

enum class OracleCheck { alignment, waterfilling, bruteforce };

// Self-contained oracle-equivalence suites (closed-form alignment,
// water-filling optimality, exhaustive-search cross-checks). Logs one line
// per check; returns false if any check fails.
bool run_oracle_check(OracleCheck check, std::ostream& log);

const char* to_string(Metric metric);
const char* to_string(Randomization randomization);
const char* to_string(SweepAxis axis);
const char* to_string(SweepComparison comparison);
const char* to_string(mads::UpdateMode mode);

}  // namespace satris
