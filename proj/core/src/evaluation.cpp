#include "advgrasp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace advgrasp {
namespace {

// ticks * step without the drift of repeated addition: for steps like 0.2
// or 0.1 the division by the integral reciprocal is correctly rounded, so
// 41 ticks of 0.2 is exactly the double nearest 8.2.
double on_grid(long ticks, double step) {
  const double inverse = 1.0 / step;
  const double rounded = std::round(inverse);
  if (rounded >= 1.0 && std::abs(inverse - rounded) < 1e-9 * rounded) {
    return static_cast<double>(ticks) / rounded;
  }
  return static_cast<double>(ticks) * step;
}

long ticks_of(double value, double step) { return std::lround(value / step); }

bool holds(const GraspScene& scene, const GraspConfig& grasp, double cap, const Wrench& external) {
  return feasible_under_cap(scene.contacts, scene.centroid, grasp.friction.gamma, cap, external);
}

}  // namespace

std::vector<Vec3> fibonacci_directions(int count) {
  if (count < 1) throw std::invalid_argument("fibonacci_directions: count must be >= 1");
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> dirs;
  dirs.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double z = count == 1 ? 1.0 : 1.0 - 2.0 * i / (count - 1);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    dirs.push_back(Vec3(r * std::cos(phi), r * std::sin(phi), z).normalized());
  }
  return dirs;
}

SteppedValue min_grasp_force(const GraspScene& scene, const GraspConfig& grasp,
                             const EvalProtocol& protocol) {
  const Wrench gravity = gravity_wrench(protocol.test_mass_kg);
  const long start = ticks_of(protocol.force_start_n, protocol.force_step_n);
  if (!holds(scene, grasp, on_grid(start, protocol.force_step_n), gravity)) {
    return {protocol.force_start_n, true};
  }
  long last = start;
  for (long t = start - 1; t >= 0; --t) {
    if (!holds(scene, grasp, on_grid(t, protocol.force_step_n), gravity)) break;
    last = t;
  }
  return {on_grid(last, protocol.force_step_n), false};
}

SteppedValue min_grasp_force(const TriangleMesh& mesh, const GraspConfig& grasp,
                             const EvalProtocol& protocol) {
  return min_grasp_force(assemble_scene(mesh, grasp), grasp, protocol);
}

SteppedValue max_lift_mass(const GraspScene& scene, const GraspConfig& grasp,
                           const EvalProtocol& protocol) {
  const long start = ticks_of(protocol.mass_start_kg, protocol.mass_step_kg);
  auto held = [&](long t) {
    return holds(scene, grasp, protocol.finger_cap_n,
                 gravity_wrench(on_grid(t, protocol.mass_step_kg)));
  };
  if (!held(start)) return {0.0, true};
  long last = start;
  for (long t = start + 1; t <= start + protocol.max_steps; ++t) {
    if (!held(t)) break;
    last = t;
  }
  return {on_grid(last, protocol.mass_step_kg), last == start + protocol.max_steps};
}

SteppedValue max_lift_mass(const TriangleMesh& mesh, const GraspConfig& grasp,
                           const EvalProtocol& protocol) {
  return max_lift_mass(assemble_scene(mesh, grasp), grasp, protocol);
}

DisturbanceResult max_external_disturbance(const GraspScene& scene, const GraspConfig& grasp,
                                           const EvalProtocol& protocol) {
  DisturbanceResult out;
  out.directions = fibonacci_directions(protocol.directions);
  const Wrench gravity = gravity_wrench(protocol.test_mass_kg);
  const double step = protocol.disturbance_step_n;

  auto held = [&](const Vec3& dir, long k) {
    Wrench w = gravity;
    w.force += on_grid(k, step) * dir;
    return holds(scene, grasp, protocol.finger_cap_n, w);
  };

  const long limit = protocol.max_steps;
  long min_break = limit + 1;
  for (const Vec3& dir : out.directions) {
    long breaks = 1;
    if (held(dir, 1)) {
      // Holdable forces along a ray form an interval containing step 1.
      long good = 1;
      long bad = limit + 1;
      for (long probe = 2; probe <= limit; probe *= 2) {
        if (!held(dir, probe)) {
          bad = probe;
          break;
        }
        good = probe;
      }
      while (bad - good > 1) {
        const long mid = good + (bad - good) / 2;
        if (held(dir, mid)) {
          good = mid;
        } else {
          bad = mid;
        }
      }
      breaks = bad;
    }
    out.per_direction_break_force.push_back(on_grid(breaks, step));
    min_break = std::min(min_break, breaks);
  }

  if (!holds(scene, grasp, protocol.finger_cap_n, gravity)) {
    out.flagged = true;
    out.max_external_disturbance = 0.0;
    return out;
  }
  out.max_external_disturbance = on_grid(min_break - 1, step);
  return out;
}

DisturbanceResult max_external_disturbance(const TriangleMesh& mesh, const GraspConfig& grasp,
                                           const EvalProtocol& protocol) {
  return max_external_disturbance(assemble_scene(mesh, grasp), grasp, protocol);
}

EvalReport evaluate_grasp(const TriangleMesh& mesh, const GraspConfig& grasp,
                          const EvalProtocol& protocol) {
  const GraspScene scene = assemble_scene(mesh, grasp);
  return {min_grasp_force(scene, grasp, protocol), max_lift_mass(scene, grasp, protocol),
          max_external_disturbance(scene, grasp, protocol)};
}

}  // namespace advgrasp
