# SPDX-License-Identifier: Apache-2.0
"""RIS-assisted satellite downlink: channel model, MADS optimizer, harness."""

from ._core import (  # noqa: F401
    SPEED_OF_LIGHT,
    TWO_PI,
    AntennaGains,
    BlackBoxProblem,
    BruteForceOutcome,
    ConfigError,
    EmitFormat,
    ExperimentConfig,
    FeasibilityReport,
    HistoryEntry,
    IncumbentSolution,
    LinkRealization,
    MadsSettings,
    Metric,
    OptimizerReport,
    OracleCheck,
    PhaseGrid,
    PowerAllocation,
    QosRequirement,
    Randomization,
    ResultRecord,
    RisConfiguration,
    RisPanel,
    RunOutcome,
    ScenarioGeometry,
    SweepAxis,
    SweepComparison,
    SweepSpec,
    TerminationReason,
    UpdateMode,
    WaterFillingResult,
    aligned_phases_single_carrier,
    brute_force_best,
    capacity,
    check_feasibility,
    db_to_linear,
    direct_gain,
    draw_realization,
    effective_channel,
    emit_results,
    equal_power,
    format_config,
    format_results_csv,
    format_results_json,
    load_config,
    make_joint_problem,
    make_problem,
    no_ris_capacity,
    objective_eq6,
    optimize,
    parse_config,
    parse_results_json,
    ris_to_ground_gain,
    run_monte_carlo,
    run_oracle_check,
    run_single,
    run_sweep,
    sat_to_ris_gain,
    snr,
    subcarrier_frequency,
    subcarrier_wavelength,
    water_filling,
    wrap_angle,
)

__version__ = "1.0.0"
