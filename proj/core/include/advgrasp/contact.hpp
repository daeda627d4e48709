#pragma once

#include <vector>

#include <Eigen/Core>

#include "advgrasp/mesh.hpp"

namespace advgrasp {

/// Standard gravity, acting along -z.
inline constexpr double kGravity = 9.81;

struct FrictionParams {
  double mu = 0.6;     ///< Coulomb sliding friction coefficient
  double gamma = 0.3;  ///< torsional friction: torque per unit normal force (m)
  int cone_edges = 8;  ///< edges of the polyhedral cone approximation

  /// Throws std::invalid_argument on mu <= 0, gamma < 0 or cone_edges < 3.
  void validate() const;
};

using Wrench6 = Eigen::Matrix<double, 6, 1>;

struct Wrench {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();

  Wrench6 stacked() const {
    Wrench6 w;
    w << force, torque;
    return w;
  }
  double norm() const { return stacked().norm(); }
};

/// Discretized contact wrenches about one reference point.
struct WrenchPrimitiveSet {
  std::vector<Wrench6> primitives;
  Vec3 origin = Vec3::Zero();
  double torque_scale = 1.0;  ///< 1/rho, rho = object radius about `origin`
};

/// Edges e_k = normalize(n + mu t_k) of the inscribed friction pyramid.
/// t_0 is the tangential projection of -z; when n is parallel to z, +x is
/// projected instead. The remaining tangents are equally spaced about n.
std::vector<Vec3> cone_edges(const Vec3& inward_normal, const FrictionParams& params);

Wrench gravity_wrench(double mass_kg);

/// One contact in world coordinates together with its cone edges.
struct ContactFrame {
  Vec3 position;
  Vec3 inward_normal;
  std::vector<Vec3> edges;
};

ContactFrame make_contact_frame(const SurfacePoint& point, const FrictionParams& params);

/// Two primitives per cone edge: force e_k with torque
/// torque_scale * ((c - z) x e_k +/- gamma (e_k . n) n).
std::vector<Wrench6> contact_primitives(const Vec3& position, const Vec3& inward_normal,
                                        const Vec3& centroid, const FrictionParams& params,
                                        double torque_scale);

}  // namespace advgrasp
