// SPDX-License-Identifier: Apache-2.0
#include "satris/mads.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace satris::mads {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string point_key(const std::vector<double>& point) {
  std::string key(point.size() * sizeof(double), '\0');
  if (!point.empty()) std::memcpy(key.data(), point.data(), key.size());
  return key;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double total_violation(const BlackBoxProblem& problem,
                       std::span<const double> point) {
  double v = 0.0;
  for (const auto& c : problem.constraints) v += std::max(0.0, c(point));
  return v;
}

// Random direction on the unit sphere, then stretched per-dimension so a
// unit step covers the same range fraction in every coordinate.
std::vector<double> scaled_random_direction(Rng& rng,
                                            const std::vector<double>& scale) {
  const std::size_t n = scale.size();
  std::vector<double> d(n, 0.0);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = rng.normal();
      norm2 += d[i] * d[i];
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < n; ++i) d[i] *= inv * scale[i];
  return d;
}

std::vector<std::vector<double>> scaled_axis_directions(
    const std::vector<double>& scale) {
  auto dirs = axis_direction_set(scale.size());
  for (auto& d : dirs) {
    for (std::size_t i = 0; i < scale.size(); ++i) d[i] *= scale[i];
  }
  return dirs;
}

// Evaluates the not-yet-visited candidates in lexicographic order (the
// deterministic reduction: ties resolve toward the smallest point) until the
// budget runs out. Returns the best feasible newly evaluated point.
std::optional<IncumbentSolution> evaluate_batch(
    const BlackBoxProblem& problem, MeshState& state,
    std::vector<std::vector<double>> candidates) {
  std::sort(candidates.begin(), candidates.end(), lex_less);
  std::optional<IncumbentSolution> best;
  for (auto& point : candidates) {
    std::string key = point_key(point);
    if (state.visited.contains(key)) continue;
    if (state.evaluations >= state.settings.max_evaluations) break;
    ++state.evaluations;
    const std::optional<double> value = evaluate_with_barrier(problem, point);
    state.visited.emplace(std::move(key), value ? *value : -kInf);
    if (value && (!best || *value > best->value)) {
      best = IncumbentSolution{std::move(point), *value, true};
    }
  }
  return best;
}

void push_incumbent(MeshState& state, IncumbentSolution sol) {
  state.incumbents.insert(state.incumbents.begin(), std::move(sol));
  const std::size_t cap = 1 + state.settings.max_recent_incumbents;
  if (state.incumbents.size() > cap) state.incumbents.resize(cap);
}

}  // namespace

double BlackBoxProblem::lower(std::size_t i) const {
  return lower_bounds.empty() ? -kInf : lower_bounds[i];
}

double BlackBoxProblem::upper(std::size_t i) const {
  return upper_bounds.empty() ? kInf : upper_bounds[i];
}

bool BlackBoxProblem::is_periodic(std::size_t i) const {
  return std::find(periodic_dims.begin(), periodic_dims.end(), i) !=
         periodic_dims.end();
}

void BlackBoxProblem::validate() const {
  if (dimension == 0) {
    throw std::invalid_argument("BlackBoxProblem: dimension must be >= 1");
  }
  if (!lower_bounds.empty() && lower_bounds.size() != dimension) {
    throw std::invalid_argument("BlackBoxProblem: lower_bounds size mismatch");
  }
  if (!upper_bounds.empty() && upper_bounds.size() != dimension) {
    throw std::invalid_argument("BlackBoxProblem: upper_bounds size mismatch");
  }
  for (std::size_t i = 0; i < dimension; ++i) {
    if (std::isnan(lower(i)) || std::isnan(upper(i)) || lower(i) > upper(i)) {
      throw std::invalid_argument(
          "BlackBoxProblem: bounds must satisfy lower <= upper");
    }
  }
  for (std::size_t i : periodic_dims) {
    if (i >= dimension) {
      throw std::invalid_argument(
          "BlackBoxProblem: periodic dimension index out of range");
    }
    if (!std::isfinite(lower(i)) || !std::isfinite(upper(i)) ||
        upper(i) <= lower(i)) {
      throw std::invalid_argument(
          "BlackBoxProblem: periodic dimensions need finite bounds with a "
          "positive span");
    }
  }
  if (!objective) {
    throw std::invalid_argument("BlackBoxProblem: objective not set");
  }
}

void MadsSettings::validate() const {
  const bool widths_ok = initial_mesh_width > 0.0 && initial_poll_size > 0.0 &&
                         initial_mesh_width > initial_poll_size &&
                         std::isfinite(initial_mesh_width);
  if (!widths_ok) {
    throw std::invalid_argument(
        "MadsSettings: require mesh width > poll size > 0");
  }
  if (!(expand_factor > 0.0 && expand_factor < contract_factor &&
        contract_factor < 1.0)) {
    throw std::invalid_argument(
        "MadsSettings: require 0 < expand_factor < contract_factor < 1");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("MadsSettings: epsilon must be > 0");
  }
  if (max_evaluations < 1) {
    throw std::invalid_argument("MadsSettings: max_evaluations must be >= 1");
  }
  if (!(mesh_width_cap >= 1.0) || !std::isfinite(mesh_width_cap)) {
    throw std::invalid_argument("MadsSettings: mesh_width_cap must be >= 1");
  }
}

std::vector<std::vector<double>> axis_direction_set(std::size_t dimension) {
  std::vector<std::vector<double>> dirs;
  dirs.reserve(2 * dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    std::vector<double> plus(dimension, 0.0);
    plus[i] = 1.0;
    dirs.push_back(plus);
    plus[i] = -1.0;
    dirs.push_back(std::move(plus));
  }
  return dirs;
}

void project_into_bounds(const BlackBoxProblem& problem,
                         std::vector<double>& point) {
  if (point.size() != problem.dimension) {
    throw std::invalid_argument("project_into_bounds: dimension mismatch");
  }
  for (std::size_t i = 0; i < problem.dimension; ++i) {
    const double lo = problem.lower(i);
    const double hi = problem.upper(i);
    double& x = point[i];
    if (problem.is_periodic(i)) {
      const double span = hi - lo;
      x = lo + std::fmod(x - lo, span);
      if (x < lo) x += span;
      if (x >= hi) x = lo;  // rounding can land exactly on the far edge
    } else {
      if (x < lo) x = lo;
      if (x > hi) x = hi;
    }
    x += 0.0;  // collapse -0.0 so cached keys are unique
  }
}

std::vector<std::vector<double>> generate_mesh_points(
    const BlackBoxProblem& problem,
    const std::vector<std::vector<double>>& incumbents, double mesh_width,
    const std::vector<std::vector<double>>& directions) {
  problem.validate();
  if (incumbents.empty()) {
    throw std::logic_error("generate_mesh_points: empty incumbent set");
  }
  if (!(mesh_width > 0.0)) {
    throw std::invalid_argument("generate_mesh_points: width must be > 0");
  }
  std::vector<std::vector<double>> out;
  std::unordered_set<std::string> seen;
  out.reserve(incumbents.size() * directions.size());
  for (const auto& anchor : incumbents) {
    if (anchor.size() != problem.dimension) {
      throw std::invalid_argument("generate_mesh_points: anchor dimension");
    }
    for (const auto& d : directions) {
      if (d.size() != problem.dimension) {
        throw std::invalid_argument("generate_mesh_points: direction dimension");
      }
      std::vector<double> p(problem.dimension);
      for (std::size_t i = 0; i < problem.dimension; ++i) {
        p[i] = anchor[i] + mesh_width * d[i];
      }
      project_into_bounds(problem, p);
      if (seen.insert(point_key(p)).second) out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<std::vector<double>> generate_poll_points(
    const BlackBoxProblem& problem, const std::vector<double>& incumbent,
    double poll_size, const std::vector<std::vector<double>>& directions) {
  return generate_mesh_points(problem, {incumbent}, poll_size, directions);
}

std::optional<double> evaluate_with_barrier(const BlackBoxProblem& problem,
                                            std::span<const double> point) {
  for (const auto& c : problem.constraints) {
    if (c(point) > 0.0) return std::nullopt;
  }
  return problem.objective(point);
}

MeshState make_state(const BlackBoxProblem& problem,
                     std::vector<double> initial_point,
                     const MadsSettings& settings) {
  problem.validate();
  settings.validate();
  if (initial_point.size() != problem.dimension) {
    throw std::invalid_argument("make_state: initial point dimension mismatch");
  }
  project_into_bounds(problem, initial_point);

  MeshState state;
  state.settings = settings;
  state.mesh_width = settings.initial_mesh_width;
  state.poll_size = settings.initial_poll_size;
  state.expand_factor = settings.expand_factor;
  state.contract_factor = settings.contract_factor;
  state.rng = Rng(settings.seed);
  state.scale.resize(problem.dimension, 1.0);
  for (std::size_t i = 0; i < problem.dimension; ++i) {
    const double lo = problem.lower(i);
    const double hi = problem.upper(i);
    if (std::isfinite(lo) && std::isfinite(hi)) state.scale[i] = hi - lo;
  }

  const std::optional<double> value =
      evaluate_with_barrier(problem, initial_point);
  state.evaluations = 1;
  state.visited.emplace(point_key(initial_point), value ? *value : -kInf);
  if (!value) {
    throw std::invalid_argument("make_state: initial point is infeasible");
  }
  state.incumbents.push_back(
      IncumbentSolution{std::move(initial_point), *value, true});
  return state;
}

void step(const BlackBoxProblem& problem, MeshState& state) {
  if (state.incumbents.empty()) {
    throw std::logic_error("step: state has no incumbent");
  }
  const auto base = scaled_axis_directions(state.scale);

  // Coarse phase: stencil around the best point and the recent improvers.
  auto mesh_dirs = base;
  if (state.settings.augment_random_direction) {
    mesh_dirs.push_back(scaled_random_direction(state.rng, state.scale));
  }
  std::vector<std::vector<double>> anchors;
  anchors.reserve(state.incumbents.size());
  for (const auto& inc : state.incumbents) anchors.push_back(inc.point);
  auto mesh_best = evaluate_batch(
      problem, state,
      generate_mesh_points(problem, anchors, state.mesh_width, mesh_dirs));
  const bool mesh_improved =
      mesh_best && mesh_best->value > state.incumbents.front().value;
  if (mesh_improved) push_incumbent(state, std::move(*mesh_best));

  // Fine phase around the (possibly just updated) best point.
  auto poll_dirs = base;
  if (state.settings.augment_random_direction) {
    poll_dirs.push_back(scaled_random_direction(state.rng, state.scale));
  }
  auto poll_best = evaluate_batch(
      problem, state,
      generate_poll_points(problem, state.incumbents.front().point,
                           state.poll_size, poll_dirs));
  const bool poll_improved =
      poll_best && poll_best->value > state.incumbents.front().value;
  if (poll_improved) push_incumbent(state, std::move(*poll_best));

  const double mesh_cap =
      state.settings.mesh_width_cap * state.settings.initial_mesh_width;
  if (state.settings.mode == UpdateMode::paper) {
    // Poll success refines the poll stencil; a fully stalled iteration does
    // too (otherwise the epsilon stop could never trigger). A successful
    // mesh phase alone leaves the poll size unchanged.
    if (poll_improved || !mesh_improved) {
      state.poll_size *= state.contract_factor;
    }
    if (!mesh_improved) {
      state.mesh_width =
          std::min(state.mesh_width / state.expand_factor, mesh_cap);
    }
  } else {
    if (mesh_improved || poll_improved) {
      state.poll_size = std::min(state.poll_size / state.contract_factor,
                                 state.settings.initial_poll_size);
      state.mesh_width =
          std::min(state.mesh_width / state.expand_factor, mesh_cap);
    } else {
      state.poll_size *= state.contract_factor;
      state.mesh_width *= state.contract_factor;
    }
  }

  ++state.iteration;
  state.history.push_back(HistoryEntry{state.iteration,
                                       state.incumbents.front().value,
                                       state.mesh_width, state.poll_size});
}

OptimizerReport optimize(const BlackBoxProblem& problem,
                         std::vector<double> initial_point,
                         const MadsSettings& settings) {
  problem.validate();
  settings.validate();
  if (initial_point.size() != problem.dimension) {
    throw std::invalid_argument("optimize: initial point dimension mismatch");
  }
  project_into_bounds(problem, initial_point);

  OptimizerReport report;
  std::size_t spent = 0;
  std::size_t iterations = 0;

  if (total_violation(problem, initial_point) > 0.0) {
    // Feasibility search: minimize the summed violation with the same
    // machinery until it hits zero, then restart from that point.
    if (settings.max_evaluations <= 1) {
      report.termination = TerminationReason::no_feasible_start;
      return report;
    }
    BlackBoxProblem feasibility;
    feasibility.dimension = problem.dimension;
    feasibility.lower_bounds = problem.lower_bounds;
    feasibility.upper_bounds = problem.upper_bounds;
    feasibility.periodic_dims = problem.periodic_dims;
    const BlackBoxProblem* target = &problem;
    feasibility.objective = [target](std::span<const double> x) {
      return -total_violation(*target, x);
    };
    MadsSettings fs = settings;
    fs.max_evaluations = settings.max_evaluations - 1;
    MeshState fstate = make_state(feasibility, initial_point, fs);
    while (fstate.incumbents.front().value < 0.0 &&
           fstate.poll_size >= fs.epsilon &&
           fstate.evaluations < fs.max_evaluations) {
      step(feasibility, fstate);
    }
    spent = fstate.evaluations;
    iterations = fstate.iteration;
    if (fstate.incumbents.front().value < 0.0) {
      report.termination = TerminationReason::no_feasible_start;
      report.evaluations = spent;
      report.iterations = iterations;
      return report;
    }
    initial_point = fstate.incumbents.front().point;
  }

  MadsSettings ms = settings;
  ms.max_evaluations = settings.max_evaluations - spent;
  MeshState state = make_state(problem, std::move(initial_point), ms);
  while (state.poll_size >= ms.epsilon &&
         state.evaluations < ms.max_evaluations) {
    step(problem, state);
  }
  report.best = state.incumbents.front();
  report.evaluations = spent + state.evaluations;
  report.iterations = iterations + state.iteration;
  report.history = std::move(state.history);
  report.termination = state.poll_size < ms.epsilon
                           ? TerminationReason::epsilon_optimal
                           : TerminationReason::budget_exhausted;
  return report;
}

}  // namespace satris::mads
