// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance gate: one pass/fail line per criterion, exit 0 only
// if every criterion holds.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "satris/baselines.hpp"
#include "satris/experiment.hpp"
#include "satris/mads.hpp"
#include "satris/rng.hpp"

using namespace satris;

namespace {

bool rel_close(double actual, double expected, double tol) {
  return std::abs(actual - expected) <= tol * std::abs(expected);
}

ExperimentConfig base_config(std::size_t m_count, std::size_t k_count) {
  ExperimentConfig config;
  config.geometry.num_subcarriers = m_count;
  config.panel.num_elements = k_count;
  return config;
}

// ---- criterion 1: link-budget scalars against frozen hand calculations ----

bool criterion_link_budget(std::string& detail) {
  const ExperimentConfig config = base_config(1, 1);
  const double f = direct_gain(config.geometry, config.gains, 1);
  const double g =
      std::abs(sat_to_ris_gain(config.geometry, config.gains, 1));
  const double h =
      ris_to_ground_gain(config.geometry, config.gains, config.panel, 1);
  const bool ok = rel_close(f, 3.654410649563571e-08, 1e-6) &&
                  rel_close(g, 1.7290889996032454e-07, 1e-6) &&
                  rel_close(h, 1.0567445199183234e-04, 1e-6);
  std::ostringstream s;
  s << "f=" << f << " |g|=" << g << " h=" << h;
  detail = s.str();
  return ok;
}

// ---- criterion 2: closed-form phase oracle on single-carrier links ----

bool criterion_alignment_oracle(std::string& detail) {
  const std::uint64_t seed = 20001;
  double worst = 1.0;
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    ExperimentConfig config = base_config(1, 1 + i % 8);
    config.optimizer.mode = mads::UpdateMode::canonical;
    config.optimizer.max_evaluations = 5000;
    config.monte_carlo_runs = 1;

    const LinkRealization link =
        draw_realization(config, seed, static_cast<std::uint64_t>(i));
    const RisConfiguration aligned = aligned_phases_single_carrier(link);
    PowerAllocation full;
    full.budget = config.budget;
    full.powers = {config.budget};
    const double aligned_cap =
        capacity(link, aligned, full, config.geometry.subcarrier_bandwidth);

    const RunOutcome outcome =
        run_single(config, seed, static_cast<std::uint64_t>(i));
    const double ratio = outcome.capacity_bps / aligned_cap;
    worst = std::min(worst, ratio);
    if (!outcome.feasible || ratio < 1.0 - 1e-3 || ratio > 1.0 + 1e-6) {
      ++failures;
    }
  }
  std::ostringstream s;
  s << "100 instances, worst capacity ratio " << worst << ", failures "
    << failures;
  detail = s.str();
  return failures == 0;
}

// ---- criterion 3: brute-force grid oracle on two-carrier links ----

bool criterion_bruteforce_oracle(std::string& detail) {
  const std::uint64_t seed = 30001;
  double worst = 1.0;
  int failures = 0;
  for (int i = 0; i < 20; ++i) {
    ExperimentConfig config = base_config(2, 2);
    config.optimizer.mode = mads::UpdateMode::canonical;
    config.optimizer.max_evaluations = 5000;

    const LinkRealization link =
        draw_realization(config, seed, static_cast<std::uint64_t>(i));
    PhaseGrid grid;
    grid.levels = 16;
    grid.dimensions = 2;
    const BruteForceOutcome brute = brute_force_best(
        link, grid, {}, config.qos(), config.geometry.subcarrier_bandwidth,
        config.budget);
    if (!brute.found || brute.value <= 0.0) {
      ++failures;
      continue;
    }
    const RunOutcome outcome =
        run_single(config, seed, static_cast<std::uint64_t>(i));
    const double ratio = outcome.capacity_bps / brute.value;
    worst = std::min(worst, ratio);
    if (ratio < 1.0 - 0.01) ++failures;
  }
  std::ostringstream s;
  s << "20 instances, worst optimizer/grid ratio " << worst << ", failures "
    << failures;
  detail = s.str();
  return failures == 0;
}

// ---- criterion 4: water-filling KKT residuals ----

bool criterion_waterfilling_kkt(std::string& detail) {
  Rng rng(40001);
  double worst_budget = 0.0;
  double worst_slack = 0.0;
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m_count = 1 + static_cast<std::size_t>(rng.next_u64() % 16);
    // Gain scales from unity down to satcom path-loss magnitudes.
    const double scale = std::pow(10.0, -12.0 * rng.uniform());
    std::vector<double> gains(m_count);
    for (double& g : gains) g = scale * (0.05 + rng.uniform());
    const double noise = 0.01;
    const double budget = 1.0 + 200.0 * rng.uniform();

    const WaterFillingResult wf = water_filling(gains, noise, budget);
    const double budget_residual =
        std::abs(wf.allocation.total() - budget) / budget;
    worst_budget = std::max(worst_budget, budget_residual);
    bool ok = budget_residual <= 1e-9;
    for (std::size_t m = 0; m < m_count; ++m) {
      const double a = noise / gains[m];
      const double p = wf.allocation.powers[m];
      double slack = 0.0;
      if (p > 0.0) {
        slack = std::abs(a + p - wf.water_level) / wf.water_level;
      } else {
        slack = std::max(0.0, wf.water_level - a) / wf.water_level;
      }
      worst_slack = std::max(worst_slack, slack);
      ok = ok && slack <= 1e-9;
    }
    if (!ok) ++failures;
  }
  std::ostringstream s;
  s << "1000 instances, worst residuals: budget " << worst_budget
    << ", slackness " << worst_slack;
  detail = s.str();
  return failures == 0;
}

// ---- criterion 5: optimized surface dominates the no-surface baseline ----

bool criterion_ris_dominance(std::string& detail) {
  const std::uint64_t seed = 50001;
  SweepSpec spec;
  spec.axis = SweepAxis::subcarriers;
  spec.values = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};

  int failures = 0;
  double min_gain = 1e300;
  for (double budget : {80.0, 100.0}) {
    ExperimentConfig config = base_config(8, 8);
    config.budget = budget;
    config.monte_carlo_runs = 10;
    const std::vector<ResultRecord> records = run_sweep(config, spec, seed);
    for (const ResultRecord& r : records) {
      if (r.infeasible_runs != 0) ++failures;
      const double gain = r.mean_capacity_bps - r.baseline_capacity_bps;
      min_gain = std::min(min_gain, gain);
      if (gain < 0.0) ++failures;
      if (r.axis_value == 1.0 && !(gain > 0.0)) ++failures;
    }
  }
  std::ostringstream s;
  s << "16 sweep points, min (optimized - baseline) " << min_gain << " bps, "
    << "failures " << failures;
  detail = s.str();
  return failures == 0;
}

// ---- criterion 6: monotone capacity trends under common random numbers ----

double aligned_capacity(const ExperimentConfig& config, std::uint64_t seed,
                        std::uint64_t run) {
  const LinkRealization link = draw_realization(config, seed, run);
  const std::size_t m_count = link.num_subcarriers();
  const std::size_t k_count = link.num_elements();
  std::vector<double> gains(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    double amp = link.direct[m];
    for (std::size_t k = 0; k < k_count; ++k) {
      amp += std::abs(link.sat_to_ris[m * k_count + k]) *
             link.ris_to_ground[m * k_count + k];
    }
    gains[m] = amp * amp;
  }
  const WaterFillingResult wf =
      water_filling(gains, config.noise_variance, config.budget);
  double cap = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    cap += config.geometry.subcarrier_bandwidth *
           std::log2(1.0 + gains[m] * wf.allocation.powers[m] /
                               config.noise_variance);
  }
  return cap;
}

bool criterion_monotone_trends(std::string& detail) {
  const std::uint64_t seed = 60001;
  const std::uint64_t runs = 5;
  int violations = 0;

  for (std::uint64_t run = 0; run < runs; ++run) {
    double prev = -1.0;
    for (std::size_t k = 2; k <= 10; ++k) {
      const double cap = aligned_capacity(base_config(8, k), seed, run);
      if (cap < prev) ++violations;
      prev = cap;
    }

    prev = -1.0;
    for (int watts = 40; watts <= 120; watts += 10) {
      ExperimentConfig config = base_config(8, 8);
      config.budget = watts;
      const double cap = aligned_capacity(config, seed, run);
      if (cap < prev) ++violations;
      prev = cap;
    }

    prev = -1.0;
    for (std::size_t m = 1; m <= 8; ++m) {
      const double cap = aligned_capacity(base_config(m, 8), seed, run);
      if (cap < prev) ++violations;
      prev = cap;
    }
  }
  std::ostringstream s;
  s << "K, power, and subcarrier ladders over " << runs
    << " draws, violations " << violations;
  detail = s.str();
  return violations == 0;
}

// ---- criterion 7: optimizer contracts ----

struct ContractCheck {
  bool monotone = true;
  bool feasible = true;
  bool honest = true;
  bool deterministic = true;
};

ContractCheck check_contracts(const mads::BlackBoxProblem& problem,
                              const std::vector<double>& start,
                              const mads::MadsSettings& settings) {
  ContractCheck out;
  const mads::OptimizerReport a = mads::optimize(problem, start, settings);
  const mads::OptimizerReport b = mads::optimize(problem, start, settings);

  for (std::size_t i = 1; i < a.history.size(); ++i) {
    if (a.history[i].best_value < a.history[i - 1].best_value) {
      out.monotone = false;
    }
  }
  if (a.best) {
    double violation = 0.0;
    for (const auto& c : problem.constraints) {
      violation += std::max(0.0, c(a.best->point));
    }
    out.feasible = violation == 0.0;
    for (std::size_t i = 0; i < problem.dimension; ++i) {
      const double x = a.best->point[i];
      if (x < problem.lower(i) || x > problem.upper(i)) out.feasible = false;
    }
  } else {
    out.feasible = false;
  }
  out.honest = a.evaluations <= settings.max_evaluations &&
               b.evaluations <= settings.max_evaluations;
  out.deterministic = a.best.has_value() == b.best.has_value() &&
                      a.evaluations == b.evaluations &&
                      a.iterations == b.iterations;
  if (a.best && b.best) {
    out.deterministic = out.deterministic && a.best->point == b.best->point &&
                        a.best->value == b.best->value;
  }
  return out;
}

bool criterion_optimizer_contracts(std::string& detail) {
  int failures = 0;
  const auto tally = [&failures](const ContractCheck& c) {
    failures += !c.monotone + !c.feasible + !c.honest + !c.deterministic;
  };

  mads::BlackBoxProblem quadratic;
  quadratic.dimension = 1;
  quadratic.lower_bounds = {0.0};
  quadratic.upper_bounds = {2.0};
  quadratic.objective = [](std::span<const double> x) {
    return -(x[0] - 1.0) * (x[0] - 1.0);
  };

  mads::BlackBoxProblem corner;
  corner.dimension = 2;
  corner.lower_bounds = {0.0, 0.0};
  corner.upper_bounds = {1.0, 1.0};
  corner.objective = [](std::span<const double> x) { return x[0] + x[1]; };
  corner.constraints.push_back([](std::span<const double> x) {
    return std::max(0.0, x[0] + x[1] - 1.6);
  });

  for (const auto mode :
       {mads::UpdateMode::paper, mads::UpdateMode::canonical}) {
    mads::MadsSettings settings;
    settings.mode = mode;
    settings.max_evaluations = 2000;
    settings.seed = 777;
    tally(check_contracts(quadratic, {0.1}, settings));
    tally(check_contracts(corner, {0.2, 0.3}, settings));
  }

  const std::uint64_t seed = 70001;
  for (int i = 0; i < 10; ++i) {
    const ExperimentConfig config = base_config(2, 2);
    const LinkRealization link =
        draw_realization(config, seed, static_cast<std::uint64_t>(i));
    const mads::BlackBoxProblem problem = make_joint_problem(
        link, config.qos(), config.budget,
        config.geometry.subcarrier_bandwidth, Metric::shannon_capacity);
    std::vector<double> start(problem.dimension, 0.0);
    start[0] = start[1] = 0.999 * config.budget / 2.0;
    mads::MadsSettings settings;
    settings.max_evaluations = 2000;
    settings.seed = seed + static_cast<std::uint64_t>(i);
    tally(check_contracts(problem, start, settings));
  }

  std::ostringstream s;
  s << "4 analytic configurations + 10 satcom instances, contract failures "
    << failures;
  detail = s.str();
  return failures == 0;
}

// ---- criterion 8: byte-identical pipeline reruns through the cli ----

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

bool criterion_pipeline_determinism(std::string& detail) {
  const std::string cli = SATRIS_CLI_PATH;
  const std::string config_path = "acceptance_pipeline.cfg";
  {
    ExperimentConfig config = base_config(2, 2);
    config.optimizer.max_evaluations = 400;
    config.monte_carlo_runs = 3;
    std::ofstream cfg(config_path, std::ios::binary);
    cfg << format_config(config);
  }

  int failures = 0;
  std::string mismatch;
  for (const std::string format : {"csv", "json"}) {
    const std::string out_a = "acceptance_a." + format;
    const std::string out_b = "acceptance_b." + format;
    for (const std::string& out : {out_a, out_b}) {
      const std::string cmd = cli + " run --config " + config_path +
                              " --seed 4242 --out " + out + " --format " +
                              format + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) ++failures;
    }
    std::string a;
    std::string b;
    if (!read_file(out_a, a) || !read_file(out_b, b) || a.empty() ||
        a != b) {
      ++failures;
      mismatch += " " + format;
    }
    std::remove(out_a.c_str());
    std::remove(out_b.c_str());
  }
  std::remove(config_path.c_str());
  std::ostringstream s;
  s << "run executed twice per format, failures " << failures;
  if (!mismatch.empty()) s << " (mismatch:" << mismatch << ")";
  detail = s.str();
  return failures == 0;
}

struct Criterion {
  const char* name;
  bool (*check)(std::string&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"link-budget scalars", criterion_link_budget},
      {"closed-form phase oracle", criterion_alignment_oracle},
      {"brute-force grid oracle", criterion_bruteforce_oracle},
      {"water-filling kkt residuals", criterion_waterfilling_kkt},
      {"surface dominates baseline", criterion_ris_dominance},
      {"monotone capacity trends", criterion_monotone_trends},
      {"optimizer contracts", criterion_optimizer_contracts},
      {"pipeline determinism", criterion_pipeline_determinism},
  };

  bool all_ok = true;
  int index = 1;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << index << ": "
              << c.name << " — " << detail << "\n";
    all_ok = all_ok && ok;
    ++index;
  }
  std::cout << (all_ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << "\n";
  return all_ok ? 0 : 1;
}
