// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "satris/rng.hpp"

namespace satris::mads {

// Box-bounded blackbox maximization problem with inequality constraints
// handled by an extreme barrier. Constraint evaluators return a violation
// magnitude (0 = satisfied). Dimensions listed in periodic_dims are treated
// modulo their bound span (phases); the rest clamp to their bounds.
struct BlackBoxProblem {
  std::size_t dimension = 0;
  std::vector<double> lower_bounds;  // empty means unbounded below
  std::vector<double> upper_bounds;  // empty means unbounded above
  std::vector<std::size_t> periodic_dims;
  std::function<double(std::span<const double>)> objective;  // maximized
  std::vector<std::function<double(std::span<const double>)>> constraints;

  double lower(std::size_t i) const;
  double upper(std::size_t i) const;
  bool is_periodic(std::size_t i) const;
  void validate() const;
};

struct IncumbentSolution {
  std::vector<double> point;
  double value = 0.0;
  bool feasible = true;
};

enum class UpdateMode {
  // Stencil updates as the source procedure states them: mesh width grows on
  // mesh failure, poll size shrinks on poll success (plus a shrink on fully
  // stalled iterations so the epsilon stop can trigger).
  paper,
  // Conventional pattern-search updates: both stencils grow on success (up to
  // their caps) and shrink on failure.
  canonical,
};

struct MadsSettings {
  // Stencil sizes are dimensionless multiples of each variable's range.
  double initial_mesh_width = 0.25;   // coarse stencil
  double initial_poll_size = 0.05;    // fine stencil
  double expand_factor = 0.5;         // mesh grows by 1/expand_factor
  double contract_factor = 0.7;       // poll shrinks by contract_factor
  double epsilon = 1e-6;              // stop when poll_size < epsilon
  std::size_t max_evaluations = 20000;
  double mesh_width_cap = 10.0;       // cap, in multiples of the initial width
  std::size_t max_recent_incumbents = 4;  // mesh anchors beyond the best point
  bool augment_random_direction = true;
  std::uint64_t seed = 0;
  UpdateMode mode = UpdateMode::paper;

  void validate() const;
};

struct HistoryEntry {
  std::size_t iteration = 0;
  double best_value = 0.0;
  double mesh_width = 0.0;
  double poll_size = 0.0;
};

enum class TerminationReason { epsilon_optimal, budget_exhausted,
                               no_feasible_start };

struct OptimizerReport {
  std::optional<IncumbentSolution> best;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  std::vector<HistoryEntry> history;
  TerminationReason termination = TerminationReason::budget_exhausted;
};

// Mutable optimizer state for one run. incumbents.front() is the current
// best; the tail holds the most recent improving points (mesh anchors).
struct MeshState {
  double mesh_width = 0.25;
  double poll_size = 0.05;
  double expand_factor = 0.5;
  double contract_factor = 0.7;
  std::vector<IncumbentSolution> incumbents;
  std::size_t iteration = 0;

  std::vector<double> scale;  // per-dimension range; 1 for unbounded dims
  std::size_t evaluations = 0;
  std::vector<HistoryEntry> history;
  std::unordered_map<std::string, double> visited;  // bit-pattern point cache
  MadsSettings settings;
  Rng rng{0};
};

// The 2n axis directions {+e_0, -e_0, +e_1, ...}.
std::vector<std::vector<double>> axis_direction_set(std::size_t dimension);

// Trial points anchor + width * d for every anchor and direction, projected
// into bounds (periodic dims wrap, others clamp), de-duplicated.
std::vector<std::vector<double>> generate_mesh_points(
    const BlackBoxProblem& problem,
    const std::vector<std::vector<double>>& incumbents, double mesh_width,
    const std::vector<std::vector<double>>& directions);

// Same stencil arithmetic around the single current best point.
std::vector<std::vector<double>> generate_poll_points(
    const BlackBoxProblem& problem, const std::vector<double>& incumbent,
    double poll_size, const std::vector<std::vector<double>>& directions);

// Objective value, or nullopt if any constraint is violated (the point is
// then treated as -infinity and can never displace a feasible incumbent).
std::optional<double> evaluate_with_barrier(const BlackBoxProblem& problem,
                                            std::span<const double> point);

// Projects a point into the problem's box: wraps periodic dims, clamps the
// rest, normalizes signed zeros.
void project_into_bounds(const BlackBoxProblem& problem,
                         std::vector<double>& point);

// Initializes state at a feasible starting point (throws
// std::invalid_argument if the point is infeasible after projection;
// optimize() runs a feasibility search first instead).
MeshState make_state(const BlackBoxProblem& problem,
                     std::vector<double> initial_point,
                     const MadsSettings& settings);

// One iteration: coarse mesh phase around the incumbent anchors, fine poll
// phase around the best point, then the stencil-size update for the
// configured mode.
void step(const BlackBoxProblem& problem, MeshState& state);

// Full run: optional feasibility search from an infeasible start, then
// mesh/poll iterations until poll_size < epsilon or the evaluation budget is
// spent.
OptimizerReport optimize(const BlackBoxProblem& problem,
                         std::vector<double> initial_point,
                         const MadsSettings& settings = MadsSettings{});

}  // namespace satris::mads
