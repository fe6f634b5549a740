// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end: run | sweep | oracle.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 completed but
// every run at some axis point was infeasible, 3 output I/O error.
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satris/experiment.hpp"

namespace {

satris::EmitFormat parse_format(const std::string& name) {
  if (name == "csv") return satris::EmitFormat::csv;
  if (name == "json") return satris::EmitFormat::json;
  throw satris::ConfigError("unknown format '" + name + "'");
}

int emit_and_report(const std::vector<satris::ResultRecord>& records,
                    const std::string& format_name, const std::string& out) {
  satris::emit_results(records, parse_format(format_name), out);
  bool any_dead = false;
  for (const satris::ResultRecord& r : records) {
    std::cout << r.axis_name << "=" << r.axis_value
              << " mean_capacity_bps=" << r.mean_capacity_bps
              << " baseline_capacity_bps=" << r.baseline_capacity_bps
              << " infeasible_runs=" << r.infeasible_runs << "/"
              << r.runs.size() << "\n";
    any_dead = any_dead || r.infeasible_runs == r.runs.size();
  }
  std::cout << "wrote " << out << "\n";
  return any_dead ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-assisted satellite downlink experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format_name = "csv";

  CLI::App* run = app.add_subcommand("run", "Monte Carlo run at one setting");
  run->add_option("--config", config_path, "experiment config file")
      ->required();
  run->add_option("--seed", seed, "base RNG seed")->required();
  run->add_option("--out", out_path, "output file")->required();
  run->add_option("--format", format_name, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string axis_name;
  std::vector<double> axis_values;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo over an axis");
  sweep->add_option("--axis", axis_name, "subcarriers, elements, or power")
      ->required()
      ->check(CLI::IsMember({"subcarriers", "elements", "power"}));
  sweep->add_option("--values", axis_values, "strictly increasing axis values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--config", config_path, "experiment config file")
      ->required();
  sweep->add_option("--seed", seed, "base RNG seed")->required();
  sweep->add_option("--out", out_path, "output file")->required();
  sweep->add_option("--format", format_name, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string check_name;
  CLI::App* oracle =
      app.add_subcommand("oracle", "self-check against analytic solutions");
  oracle->add_option("--check", check_name,
                     "alignment, waterfilling, or bruteforce")
      ->required()
      ->check(CLI::IsMember({"alignment", "waterfilling", "bruteforce"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      const satris::ExperimentConfig config =
          satris::load_config(config_path);
      std::vector<satris::ResultRecord> records{
          satris::run_monte_carlo(config, seed)};
      return emit_and_report(records, format_name, out_path);
    }
    if (sweep->parsed()) {
      const satris::ExperimentConfig config =
          satris::load_config(config_path);
      satris::SweepSpec spec;
      if (axis_name == "subcarriers") {
        spec.axis = satris::SweepAxis::subcarriers;
      } else if (axis_name == "elements") {
        spec.axis = satris::SweepAxis::elements;
      } else {
        spec.axis = satris::SweepAxis::power;
      }
      spec.values = axis_values;
      const std::vector<satris::ResultRecord> records =
          satris::run_sweep(config, spec, seed);
      return emit_and_report(records, format_name, out_path);
    }
    satris::OracleCheck check = satris::OracleCheck::alignment;
    if (check_name == "waterfilling") {
      check = satris::OracleCheck::waterfilling;
    } else if (check_name == "bruteforce") {
      check = satris::OracleCheck::bruteforce;
    }
    const bool ok = satris::run_oracle_check(check, std::cout);
    std::cout << (ok ? "oracle check passed\n" : "oracle check FAILED\n");
    return ok ? 0 : 1;
  } catch (const satris::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
