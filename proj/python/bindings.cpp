// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the core operations: channel model, signal model,
// baselines, the MADS optimizer, and the experiment harness.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <vector>

#include "satris/baselines.hpp"
#include "satris/channel.hpp"
#include "satris/experiment.hpp"
#include "satris/mads.hpp"
#include "satris/signal.hpp"

namespace py = pybind11;
using namespace satris;

namespace {

// Python callables receive list[float]; the optimizer works on spans.
std::function<double(std::span<const double>)> wrap_callable(py::function f) {
  return [f = std::move(f)](std::span<const double> x) {
    py::gil_scoped_acquire gil;
    return f(std::vector<double>(x.begin(), x.end())).cast<double>();
  };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "RIS-assisted satellite downlink: channel model, MADS optimizer, "
            "and Monte Carlo harness";

  m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;
  m.attr("TWO_PI") = kTwoPi;

  // ---- channel model ----
  py::class_<ScenarioGeometry>(m, "ScenarioGeometry")
      .def(py::init<>())
      .def_readwrite("d1", &ScenarioGeometry::d1)
      .def_readwrite("d2", &ScenarioGeometry::d2)
      .def_readwrite("d3", &ScenarioGeometry::d3)
      .def_readwrite("psi", &ScenarioGeometry::psi)
      .def_readwrite("carrier_freq", &ScenarioGeometry::carrier_freq)
      .def_readwrite("subcarrier_bandwidth",
                     &ScenarioGeometry::subcarrier_bandwidth)
      .def_readwrite("num_subcarriers", &ScenarioGeometry::num_subcarriers)
      .def_readwrite("phi", &ScenarioGeometry::phi)
      .def("validate", &ScenarioGeometry::validate);

  py::class_<AntennaGains>(m, "AntennaGains")
      .def(py::init<>())
      .def_readwrite("sat_beam_gain", &AntennaGains::sat_beam_gain)
      .def_readwrite("ground_gain", &AntennaGains::ground_gain)
      .def("validate", &AntennaGains::validate);

  py::class_<RisPanel>(m, "RisPanel")
      .def(py::init<>())
      .def_readwrite("num_elements", &RisPanel::num_elements)
      .def_readwrite("width", &RisPanel::width)
      .def_readwrite("length", &RisPanel::length)
      .def("validate", &RisPanel::validate);

  m.def("db_to_linear", &db_to_linear, py::arg("value_db"));
  m.def("subcarrier_frequency", &subcarrier_frequency, py::arg("geometry"),
        py::arg("m"));
  m.def("subcarrier_wavelength", &subcarrier_wavelength, py::arg("geometry"),
        py::arg("m"));
  m.def("sat_to_ris_gain", &sat_to_ris_gain, py::arg("geometry"),
        py::arg("gains"), py::arg("m"));
  m.def("ris_to_ground_gain", &ris_to_ground_gain, py::arg("geometry"),
        py::arg("gains"), py::arg("panel"), py::arg("m"));
  m.def("direct_gain", &direct_gain, py::arg("geometry"), py::arg("gains"),
        py::arg("m"));

  // ---- signal model ----
  py::class_<RisConfiguration>(m, "RisConfiguration")
      .def(py::init<>())
      .def_readwrite("amplitudes", &RisConfiguration::amplitudes)
      .def_readwrite("phases", &RisConfiguration::phases)
      .def("size", &RisConfiguration::size)
      .def_static("uniform", &RisConfiguration::uniform,
                  py::arg("num_elements"), py::arg("amplitude") = 1.0,
                  py::arg("phase") = 0.0)
      .def_static("off", &RisConfiguration::off, py::arg("num_elements"))
      .def("canonicalize", &RisConfiguration::canonicalize)
      .def("validate", &RisConfiguration::validate);

  py::class_<PowerAllocation>(m, "PowerAllocation")
      .def(py::init<>())
      .def_readwrite("powers", &PowerAllocation::powers)
      .def_readwrite("budget", &PowerAllocation::budget)
      .def("total", &PowerAllocation::total)
      .def("validate", &PowerAllocation::validate);

  py::class_<LinkRealization>(m, "LinkRealization")
      .def(py::init<>())
      .def_readwrite("sat_to_ris", &LinkRealization::sat_to_ris)
      .def_readwrite("ris_to_ground", &LinkRealization::ris_to_ground)
      .def_readwrite("direct", &LinkRealization::direct)
      .def_readwrite("noise_variance", &LinkRealization::noise_variance)
      .def("num_subcarriers", &LinkRealization::num_subcarriers)
      .def("num_elements", &LinkRealization::num_elements)
      .def("sat_gain", &LinkRealization::sat_gain, py::arg("m"), py::arg("k"))
      .def("ground_gain", &LinkRealization::ground_gain, py::arg("m"),
           py::arg("k"))
      .def("direct_path", &LinkRealization::direct_path, py::arg("m"))
      .def("validate", &LinkRealization::validate);

  py::class_<QosRequirement>(m, "QosRequirement")
      .def(py::init<>())
      .def_readwrite("min_snr", &QosRequirement::min_snr)
      .def_static("none", &QosRequirement::none, py::arg("num_subcarriers"))
      .def("validate", &QosRequirement::validate);

  py::class_<FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("qos_violations", &FeasibilityReport::qos_violations)
      .def_readonly("budget_violation", &FeasibilityReport::budget_violation)
      .def_readonly("power_violations", &FeasibilityReport::power_violations)
      .def_readonly("amplitude_violations",
                    &FeasibilityReport::amplitude_violations)
      .def("feasible", &FeasibilityReport::feasible)
      .def("total_violation", &FeasibilityReport::total_violation);

  m.def("effective_channel", &effective_channel, py::arg("link"),
        py::arg("ris"), py::arg("m"));
  m.def("snr", &snr, py::arg("link"), py::arg("ris"), py::arg("power"),
        py::arg("m"));
  m.def("capacity", &capacity, py::arg("link"), py::arg("ris"),
        py::arg("power"), py::arg("bandwidth"));
  m.def("objective_eq6", &objective_eq6, py::arg("link"), py::arg("ris"),
        py::arg("power"));
  m.def("check_feasibility", &check_feasibility, py::arg("link"),
        py::arg("ris"), py::arg("power"), py::arg("qos"));
  m.def("wrap_angle", &wrap_angle, py::arg("radians"));

  // ---- baselines ----
  py::class_<PhaseGrid>(m, "PhaseGrid")
      .def(py::init<>())
      .def_readwrite("levels", &PhaseGrid::levels)
      .def_readwrite("dimensions", &PhaseGrid::dimensions)
      .def_readwrite("max_grid_evaluations", &PhaseGrid::max_grid_evaluations)
      .def("validate", &PhaseGrid::validate);

  py::class_<BruteForceOutcome>(m, "BruteForceOutcome")
      .def_readonly("found", &BruteForceOutcome::found)
      .def_readonly("ris", &BruteForceOutcome::ris)
      .def_readonly("power", &BruteForceOutcome::power)
      .def_readonly("value", &BruteForceOutcome::value);

  py::class_<WaterFillingResult>(m, "WaterFillingResult")
      .def_readonly("allocation", &WaterFillingResult::allocation)
      .def_readonly("water_level", &WaterFillingResult::water_level)
      .def_readonly("active_channels", &WaterFillingResult::active_channels);

  m.def("equal_power", &equal_power, py::arg("budget"),
        py::arg("num_subcarriers"));
  m.def("water_filling", &water_filling, py::arg("channel_gains"),
        py::arg("noise_variance"), py::arg("budget"));
  m.def("aligned_phases_single_carrier", &aligned_phases_single_carrier,
        py::arg("link"));
  m.def("brute_force_best", &brute_force_best, py::arg("link"),
        py::arg("grid"), py::arg("power_candidates"), py::arg("qos"),
        py::arg("bandwidth"), py::arg("budget"));
  m.def("no_ris_capacity", &no_ris_capacity, py::arg("link"),
        py::arg("power"), py::arg("bandwidth"));

  // ---- optimizer ----
  py::enum_<mads::UpdateMode>(m, "UpdateMode")
      .value("paper", mads::UpdateMode::paper)
      .value("canonical", mads::UpdateMode::canonical);

  py::enum_<mads::TerminationReason>(m, "TerminationReason")
      .value("epsilon_optimal", mads::TerminationReason::epsilon_optimal)
      .value("budget_exhausted", mads::TerminationReason::budget_exhausted)
      .value("no_feasible_start", mads::TerminationReason::no_feasible_start);

  py::class_<mads::MadsSettings>(m, "MadsSettings")
      .def(py::init<>())
      .def_readwrite("initial_mesh_width",
                     &mads::MadsSettings::initial_mesh_width)
      .def_readwrite("initial_poll_size",
                     &mads::MadsSettings::initial_poll_size)
      .def_readwrite("expand_factor", &mads::MadsSettings::expand_factor)
      .def_readwrite("contract_factor", &mads::MadsSettings::contract_factor)
      .def_readwrite("epsilon", &mads::MadsSettings::epsilon)
      .def_readwrite("max_evaluations", &mads::MadsSettings::max_evaluations)
      .def_readwrite("mesh_width_cap", &mads::MadsSettings::mesh_width_cap)
      .def_readwrite("max_recent_incumbents",
                     &mads::MadsSettings::max_recent_incumbents)
      .def_readwrite("augment_random_direction",
                     &mads::MadsSettings::augment_random_direction)
      .def_readwrite("seed", &mads::MadsSettings::seed)
      .def_readwrite("mode", &mads::MadsSettings::mode)
      .def("validate", &mads::MadsSettings::validate);

  py::class_<mads::IncumbentSolution>(m, "IncumbentSolution")
      .def_readonly("point", &mads::IncumbentSolution::point)
      .def_readonly("value", &mads::IncumbentSolution::value)
      .def_readonly("feasible", &mads::IncumbentSolution::feasible);

  py::class_<mads::HistoryEntry>(m, "HistoryEntry")
      .def_readonly("iteration", &mads::HistoryEntry::iteration)
      .def_readonly("best_value", &mads::HistoryEntry::best_value)
      .def_readonly("mesh_width", &mads::HistoryEntry::mesh_width)
      .def_readonly("poll_size", &mads::HistoryEntry::poll_size);

  py::class_<mads::OptimizerReport>(m, "OptimizerReport")
      .def_readonly("best", &mads::OptimizerReport::best)
      .def_readonly("evaluations", &mads::OptimizerReport::evaluations)
      .def_readonly("iterations", &mads::OptimizerReport::iterations)
      .def_readonly("history", &mads::OptimizerReport::history)
      .def_readonly("termination", &mads::OptimizerReport::termination);

  py::class_<mads::BlackBoxProblem>(m, "BlackBoxProblem")
      .def_readonly("dimension", &mads::BlackBoxProblem::dimension)
      .def_readonly("lower_bounds", &mads::BlackBoxProblem::lower_bounds)
      .def_readonly("upper_bounds", &mads::BlackBoxProblem::upper_bounds)
      .def_readonly("periodic_dims", &mads::BlackBoxProblem::periodic_dims);

  m.def(
      "make_problem",
      [](std::size_t dimension, std::vector<double> lower,
         std::vector<double> upper, py::function objective,
         std::vector<std::size_t> periodic,
         std::vector<py::function> constraints) {
        mads::BlackBoxProblem problem;
        problem.dimension = dimension;
        problem.lower_bounds = std::move(lower);
        problem.upper_bounds = std::move(upper);
        problem.periodic_dims = std::move(periodic);
        problem.objective = wrap_callable(std::move(objective));
        for (py::function& c : constraints) {
          problem.constraints.push_back(wrap_callable(std::move(c)));
        }
        problem.validate();
        return problem;
      },
      py::arg("dimension"), py::arg("lower_bounds"), py::arg("upper_bounds"),
      py::arg("objective"),
      py::arg("periodic_dims") = std::vector<std::size_t>{},
      py::arg("constraints") = std::vector<py::function>{},
      "Box-bounded maximization problem over python callables taking "
      "list[float]");

  m.def("optimize", &mads::optimize, py::arg("problem"),
        py::arg("initial_point"),
        py::arg("settings") = mads::MadsSettings{});

  // ---- experiment harness ----
  py::enum_<Metric>(m, "Metric")
      .value("shannon_capacity", Metric::shannon_capacity)
      .value("eq6_objective", Metric::eq6_objective);

  py::enum_<Randomization>(m, "Randomization")
      .value("phase_only", Randomization::phase_only)
      .value("none", Randomization::none);

  py::enum_<SweepAxis>(m, "SweepAxis")
      .value("subcarriers", SweepAxis::subcarriers)
      .value("elements", SweepAxis::elements)
      .value("power", SweepAxis::power);

  py::enum_<SweepComparison>(m, "SweepComparison")
      .value("ris_vs_conventional", SweepComparison::ris_vs_conventional)
      .value("element_counts", SweepComparison::element_counts)
      .value("power_levels", SweepComparison::power_levels);

  py::enum_<EmitFormat>(m, "EmitFormat")
      .value("csv", EmitFormat::csv)
      .value("json", EmitFormat::json);

  py::enum_<OracleCheck>(m, "OracleCheck")
      .value("alignment", OracleCheck::alignment)
      .value("waterfilling", OracleCheck::waterfilling)
      .value("bruteforce", OracleCheck::bruteforce);

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("geometry", &ExperimentConfig::geometry)
      .def_readwrite("gains", &ExperimentConfig::gains)
      .def_readwrite("panel", &ExperimentConfig::panel)
      .def_readwrite("budget", &ExperimentConfig::budget)
      .def_readwrite("noise_variance", &ExperimentConfig::noise_variance)
      .def_readwrite("min_snr", &ExperimentConfig::min_snr)
      .def_readwrite("optimizer", &ExperimentConfig::optimizer)
      .def_readwrite("metric", &ExperimentConfig::metric)
      .def_readwrite("randomization", &ExperimentConfig::randomization)
      .def_readwrite("monte_carlo_runs", &ExperimentConfig::monte_carlo_runs)
      .def("qos", &ExperimentConfig::qos)
      .def("validate", &ExperimentConfig::validate);

  py::class_<RunOutcome>(m, "RunOutcome")
      .def_readonly("capacity_bps", &RunOutcome::capacity_bps)
      .def_readonly("baseline_capacity_bps",
                    &RunOutcome::baseline_capacity_bps)
      .def_readonly("evaluations", &RunOutcome::evaluations)
      .def_readonly("feasible", &RunOutcome::feasible);

  py::class_<ResultRecord>(m, "ResultRecord")
      .def_readonly("config", &ResultRecord::config)
      .def_readonly("axis_name", &ResultRecord::axis_name)
      .def_readonly("axis_value", &ResultRecord::axis_value)
      .def_readonly("seed", &ResultRecord::seed)
      .def_readonly("runs", &ResultRecord::runs)
      .def_readonly("mean_capacity_bps", &ResultRecord::mean_capacity_bps)
      .def_readonly("std_capacity_bps", &ResultRecord::std_capacity_bps)
      .def_readonly("baseline_capacity_bps",
                    &ResultRecord::baseline_capacity_bps)
      .def_readonly("evaluations_mean", &ResultRecord::evaluations_mean)
      .def_readonly("infeasible_runs", &ResultRecord::infeasible_runs);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("axis", &SweepSpec::axis)
      .def_readwrite("values", &SweepSpec::values)
      .def_readwrite("comparison", &SweepSpec::comparison)
      .def("validate", &SweepSpec::validate);

  m.def(
      "parse_config",
      [](const std::string& text, const std::string& origin) {
        std::istringstream in(text);
        return parse_config(in, origin);
      },
      py::arg("text"), py::arg("origin") = "<string>");
  m.def("load_config", &load_config, py::arg("path"));
  m.def("format_config", &format_config, py::arg("config"));
  m.def("draw_realization", &draw_realization, py::arg("config"),
        py::arg("seed"), py::arg("run_index"));
  m.def("make_joint_problem", &make_joint_problem, py::arg("link"),
        py::arg("qos"), py::arg("budget"), py::arg("bandwidth"),
        py::arg("metric"));
  m.def("run_single", &run_single, py::arg("config"), py::arg("seed"),
        py::arg("run_index"));
  m.def("run_monte_carlo", &run_monte_carlo, py::arg("config"),
        py::arg("seed"));
  m.def("run_sweep", &run_sweep, py::arg("config"), py::arg("sweep"),
        py::arg("seed"));
  m.def("format_results_csv", &format_results_csv, py::arg("records"));
  m.def("format_results_json", &format_results_json, py::arg("records"));
  m.def("parse_results_json", &parse_results_json, py::arg("text"));
  m.def("emit_results", &emit_results, py::arg("records"), py::arg("format"),
        py::arg("path"));
  m.def(
      "run_oracle_check",
      [](OracleCheck check) {
        std::ostringstream log;
        const bool ok = run_oracle_check(check, log);
        return py::make_tuple(ok, log.str());
      },
      py::arg("check"), "Returns (passed, log_text)");
}
