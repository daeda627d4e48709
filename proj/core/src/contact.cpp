#include "advgrasp/contact.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

namespace advgrasp {

void FrictionParams::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("friction: mu must be > 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("friction: gamma must be >= 0");
  if (cone_edges < 3) throw std::invalid_argument("friction: cone_edges must be >= 3");
}

std::vector<Vec3> cone_edges(const Vec3& inward_normal, const FrictionParams& params) {
  params.validate();
  const Vec3 n = inward_normal.normalized();

  const Vec3 down(0.0, 0.0, -1.0);
  Vec3 t0 = down - down.dot(n) * n;
  if (t0.norm() < 1e-9) {
    t0 = Vec3::UnitX() - n.x() * n;
  }
  t0.normalize();
  const Vec3 t1 = n.cross(t0);

  std::vector<Vec3> edges;
  edges.reserve(params.cone_edges);
  for (int k = 0; k < params.cone_edges; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / params.cone_edges;
    const Vec3 tangent = std::cos(phi) * t0 + std::sin(phi) * t1;
    edges.push_back((n + params.mu * tangent).normalized());
  }
  return edges;
}

Wrench gravity_wrench(double mass_kg) {
  if (!(mass_kg >= 0.0)) throw std::invalid_argument("gravity_wrench: mass must be >= 0");
  return {Vec3(0.0, 0.0, -kGravity * mass_kg), Vec3::Zero()};
}

ContactFrame make_contact_frame(const SurfacePoint& point, const FrictionParams& params) {
  return {point.position, point.inward_normal, cone_edges(point.inward_normal, params)};
}

std::vector<Wrench6> contact_primitives(const Vec3& position, const Vec3& inward_normal,
                                        const Vec3& centroid, const FrictionParams& params,
                                        double torque_scale) {
  if (!(torque_scale > 0.0)) {
    throw std::invalid_argument("contact_primitives: torque_scale must be > 0");
  }
  const Vec3 n = inward_normal.normalized();
  const Vec3 arm = position - centroid;
  std::vector<Wrench6> out;
  out.reserve(2 * params.cone_edges);
  for (const Vec3& e : cone_edges(n, params)) {
    const Vec3 moment = arm.cross(e);
    const Vec3 torsion = params.gamma * e.dot(n) * n;
    for (double sign : {1.0, -1.0}) {
      Wrench6 w;
      w << e, torque_scale * (moment + sign * torsion);
      out.push_back(w);
    }
  }
  return out;
}

}  // namespace advgrasp
