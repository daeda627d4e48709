#pragma once

#include <vector>

#include "advgrasp/mesh.hpp"
#include "advgrasp/quality.hpp"

namespace advgrasp {

/// Stepping protocols for the three grasp-robustness metrics. The checks are
/// quasi-static: a step "holds" when the equilibrium LP is feasible with
/// every finger's normal force under the cap.
struct EvalProtocol {
  double force_start_n = 50.0;  ///< MinGF: first grip force tried
  double force_step_n = 0.2;
  double mass_start_kg = 1.0;   ///< MaxLM: first mass tried
  double mass_step_kg = 0.1;
  double finger_cap_n = 50.0;   ///< MaxLM / MaxED per-finger force limit
  double test_mass_kg = 1.0;    ///< MinGF / MaxED object mass
  int directions = 50;          ///< MaxED disturbance directions
  double disturbance_step_n = 1.0;
  int max_steps = 100000;
};

/// A stepped metric value; `flagged` marks the protocol's failure case.
struct SteppedValue {
  double value = 0.0;
  bool flagged = false;
};

struct DisturbanceResult {
  double max_external_disturbance = 0.0;
  bool flagged = false;  ///< gravity alone cannot be held
  std::vector<Vec3> directions;
  std::vector<double> per_direction_break_force;  ///< first force that cannot be held
};

struct EvalReport {
  SteppedValue min_grasp_force;
  SteppedValue max_lift_mass;
  DisturbanceResult disturbance;
};

/// Fibonacci lattice on the unit sphere; the first point is the +z pole.
std::vector<Vec3> fibonacci_directions(int count);

/// Lowers the cap from force_start_n by force_step_n while the test mass can
/// still be held; returns the last cap that held. Flagged (value =
/// force_start_n) when even the first cap fails.
SteppedValue min_grasp_force(const TriangleMesh& mesh, const GraspConfig& grasp,
                             const EvalProtocol& protocol = {});
SteppedValue min_grasp_force(const GraspScene& scene, const GraspConfig& grasp,
                             const EvalProtocol& protocol = {});

/// Raises the mass from mass_start_kg by mass_step_kg while it can be held
/// under finger_cap_n; returns the last mass held. Flagged (value 0) when
/// the first mass already fails.
SteppedValue max_lift_mass(const TriangleMesh& mesh, const GraspConfig& grasp,
                           const EvalProtocol& protocol = {});
SteppedValue max_lift_mass(const GraspScene& scene, const GraspConfig& grasp,
                           const EvalProtocol& protocol = {});

/// Largest force, in whole steps, that can be held in every direction on top
/// of gravity. Along one direction the holdable forces form an interval, so
/// each break force is located by galloping plus bisection; the result is
/// identical to stepping one unit at a time.
DisturbanceResult max_external_disturbance(const TriangleMesh& mesh, const GraspConfig& grasp,
                                           const EvalProtocol& protocol = {});
DisturbanceResult max_external_disturbance(const GraspScene& scene, const GraspConfig& grasp,
                                           const EvalProtocol& protocol = {});

EvalReport evaluate_grasp(const TriangleMesh& mesh, const GraspConfig& grasp,
                          const EvalProtocol& protocol = {});

}  // namespace advgrasp
