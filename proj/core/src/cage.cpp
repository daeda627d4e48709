#include "advgrasp/cage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

#include "advgrasp/errors.hpp"
#include "advgrasp/shapes.hpp"

namespace advgrasp {

Eigen::VectorXd mean_value_coordinates(const Vec3& x, const TriangleMesh& cage) {
  constexpr double kEps = 1e-12;
  const auto nv = static_cast<Eigen::Index>(cage.vertex_count());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(nv);

  std::vector<double> dist(cage.vertex_count());
  std::vector<Vec3> unit(cage.vertex_count());
  for (Eigen::Index j = 0; j < nv; ++j) {
    const Vec3 r = cage.vertex(j) - x;
    dist[j] = r.norm();
    if (dist[j] < kEps) {
      w(j) = 1.0;
      return w;
    }
    unit[j] = r / dist[j];
  }

  for (const Face& f : cage.faces()) {
    std::array<double, 3> theta{};
    for (int k = 0; k < 3; ++k) {
      const double l = (unit[f[(k + 1) % 3]] - unit[f[(k + 2) % 3]]).norm();
      theta[k] = 2.0 * std::asin(std::min(l / 2.0, 1.0));
    }
    const double h = (theta[0] + theta[1] + theta[2]) / 2.0;

    if (std::numbers::pi - h < kEps) {
      // x lies inside this triangle: planar barycentric coordinates.
      Eigen::VectorXd on_face = Eigen::VectorXd::Zero(nv);
      for (int k = 0; k < 3; ++k) {
        on_face(f[k]) = std::sin(theta[k]) * dist[f[(k + 2) % 3]] * dist[f[(k + 1) % 3]];
      }
      return on_face / on_face.sum();
    }

    std::array<double, 3> c{};
    std::array<double, 3> s{};
    const double det = unit[f[0]].dot(unit[f[1]].cross(unit[f[2]]));
    const double sign = det < 0.0 ? -1.0 : 1.0;
    bool coplanar = false;
    for (int k = 0; k < 3; ++k) {
      c[k] = 2.0 * std::sin(h) * std::sin(h - theta[k]) /
                 (std::sin(theta[(k + 1) % 3]) * std::sin(theta[(k + 2) % 3])) -
             1.0;
      s[k] = sign * std::sqrt(std::max(0.0, 1.0 - c[k] * c[k]));
      if (std::abs(s[k]) <= kEps) coplanar = true;
    }
    // x is in the triangle's plane but outside it: no contribution.
    if (coplanar) continue;

    for (int k = 0; k < 3; ++k) {
      const int kp = (k + 1) % 3;
      const int km = (k + 2) % 3;
      w(f[k]) += (theta[k] - c[kp] * theta[km] - c[km] * theta[kp]) /
                 (dist[f[k]] * std::sin(theta[kp]) * s[km]);
    }
  }
  const double total = w.sum();
  if (!std::isfinite(total) || total == 0.0) {
    throw GeometryError("mean_value_coordinates: point is not enclosed by the cage");
  }
  return w / total;
}

CageRig build_cage(const TriangleMesh& mesh, double cage_size, double inflation) {
  if (!(cage_size > 0.0)) throw std::invalid_argument("build_cage: cage_size must be > 0");
  if (!(inflation > 0.0)) throw std::invalid_argument("build_cage: inflation must be > 0");

  const Aabb box = bounding_box(mesh);
  const Vec3 pad = inflation * box.extent();
  const Vec3 lo = box.min - pad;
  const Vec3 hi = box.max + pad;
  const Vec3 extent = hi - lo;

  CageRig rig;
  rig.cage_size = cage_size;
  for (int a = 0; a < 3; ++a) {
    if (!(extent[a] > 0.0)) {
      throw GeometryError("build_cage: bounding box has zero extent along axis " +
                          std::to_string(a));
    }
    // Round up so the spacing never exceeds cage_size; the slack absorbs
    // quotients like 2.0000000001 that are integral up to rounding.
    rig.divisions[a] = std::max(1, static_cast<int>(std::ceil(extent[a] / cage_size - 1e-9)));
  }
  rig.cage_mesh = make_grid_box(lo, hi, rig.divisions);
  rig.rest_vertices = mesh.vertices();

  const auto nv = static_cast<Eigen::Index>(mesh.vertex_count());
  const auto nc = static_cast<Eigen::Index>(rig.cage_mesh.vertex_count());
  rig.weights.resize(nv, nc);
  for (Eigen::Index i = 0; i < nv; ++i) {
    rig.weights.row(i) = mean_value_coordinates(mesh.vertex(i), rig.cage_mesh).transpose();
  }
  return rig;
}

std::vector<Vec3> reconstruct_rest(const CageRig& rig) {
  const auto nc = static_cast<Eigen::Index>(rig.control_point_count());
  Eigen::Matrix<double, Eigen::Dynamic, 3> cp(nc, 3);
  for (Eigen::Index j = 0; j < nc; ++j) cp.row(j) = rig.control_points()[j].transpose();
  const Eigen::Matrix<double, Eigen::Dynamic, 3> out = rig.weights * cp;
  std::vector<Vec3> v(static_cast<std::size_t>(out.rows()));
  for (Eigen::Index i = 0; i < out.rows(); ++i) v[i] = out.row(i).transpose();
  return v;
}

std::vector<Vec3> deformed_vertices(const CageRig& rig, std::span<const Vec3> displacements) {
  if (displacements.size() != rig.control_point_count()) {
    throw std::invalid_argument("apply_deformation: expected " +
                                std::to_string(rig.control_point_count()) +
                                " displacements, got " + std::to_string(displacements.size()));
  }
  const auto nc = static_cast<Eigen::Index>(displacements.size());
  Eigen::Matrix<double, Eigen::Dynamic, 3> d(nc, 3);
  for (Eigen::Index j = 0; j < nc; ++j) d.row(j) = displacements[j].transpose();
  const Eigen::Matrix<double, Eigen::Dynamic, 3> offsets = rig.weights * d;

  // Linear precision makes weights * control_points equal the rest pose, so
  // the displaced reconstruction is rest + weights * d.
  std::vector<Vec3> v = rig.rest_vertices;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += offsets.row(static_cast<Eigen::Index>(i)).transpose();
  return v;
}

TriangleMesh apply_deformation(const CageRig& rig, std::span<const Vec3> displacements,
                               const TriangleMesh& mesh) {
  if (mesh.vertex_count() != rig.rest_vertices.size()) {
    throw std::invalid_argument("apply_deformation: mesh does not match the rig");
  }
  return mesh.with_vertices(deformed_vertices(rig, displacements));
}

}  // namespace advgrasp
