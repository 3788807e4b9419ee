#pragma once

#include <optional>
#include <vector>

#include "reebflow/volume_futaki.hpp"

namespace reebflow {

struct FlowState {
  double t = 0.0;
  ReebVector reeb;
  double volume = 0.0;
  double grad_norm = 0.0;
  std::optional<double> mu;
};

enum class FlowTermination { gradient_tolerance, max_time, boundary_guard, step_failure };

const char* to_string(FlowTermination t);

struct FlowTrajectory {
  std::vector<FlowState> states;
  FlowTermination terminated_by = FlowTermination::gradient_tolerance;
  std::string message;
};

struct FlowOptions {
  double dt0 = 0.01;
  double grad_tol = 1e-8;
  double t_max = 1e3;
  double boundary_guard = 1e-6;
  int max_halvings = 20;
};

/// Builds a valid state at xi (must lie on the slice and inside the guard).
FlowState make_flow_state(const WeightedSphereLink& link, const ReebVector& xi, double t = 0.0,
                          double boundary_guard = FlowOptions{}.boundary_guard);

/// One RK4 step of d xi/dt = -grad Vol on the slice, re-normalized after the
/// step. A step that raises the volume or leaves the guard is retried with
/// dt/2, up to `max_halvings` times.
FlowState flow_step(const WeightedSphereLink& link, const FlowState& state, double dt,
                    const FlowOptions& opts = {});

FlowTrajectory run_flow(const WeightedSphereLink& link, const ReebVector& start,
                        const FlowOptions& opts = {});

struct MinimizeResult {
  ReebVector reeb;
  double grad_norm = 0.0;
  int iterations = 0;
  /// Volume at the start and after every accepted Newton step.
  std::vector<double> volumes;
};

struct MinimizeOptions {
  double grad_tol = 1e-10;
  double boundary_guard = 1e-6;
  int max_iterations = 200;
};

/// Damped Newton on the slice with Armijo backtracking; steps are shortened
/// so iterates keep min a_i >= boundary_guard.
MinimizeResult minimize_volume(const WeightedSphereLink& link, const ReebVector& start,
                               const MinimizeOptions& opts = {});

struct ProperPoint {
  double eps;
  double volume;
  double relative_volume;
};

/// Volume at the slice points with a_i = eps and the remaining charge shared
/// equally by the other coordinates.
std::vector<ProperPoint> properness_probe(const WeightedSphereLink& link, int boundary_index,
                                          const std::vector<double>& eps_list);

}  // namespace reebflow
