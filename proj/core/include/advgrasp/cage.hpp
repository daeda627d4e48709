#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "advgrasp/mesh.hpp"

namespace advgrasp {

/// Control cage around an object plus the mean value coordinates of every
/// object vertex with respect to the undeformed cage.
///
/// The control points are the vertices of `cage_mesh`, a grid-tiled box
/// surface; `weights(i, j)` is the coordinate of object vertex i for control
/// point j. Rows sum to one and reproduce the object exactly (linear
/// precision), so moving the control points by d moves vertex i by
/// sum_j weights(i, j) d_j.
struct CageRig {
  TriangleMesh cage_mesh;
  Eigen::MatrixXd weights;
  std::vector<Vec3> rest_vertices;  ///< object vertices the weights were built on
  double cage_size = 0.0;
  std::array<int, 3> divisions{};

  const std::vector<Vec3>& control_points() const { return cage_mesh.vertices(); }
  std::size_t control_point_count() const { return cage_mesh.vertex_count(); }
};

/// Mean value coordinates of `x` with respect to a closed, outward-oriented
/// triangle cage (Ju, Schaefer and Warren 2005). Handles points on cage
/// vertices and faces.
Eigen::VectorXd mean_value_coordinates(const Vec3& x, const TriangleMesh& cage);

/// Bounding box inflated by `inflation` times its extent on every side, each
/// face tiled with cells of edge <= cage_size.
CageRig build_cage(const TriangleMesh& mesh, double cage_size, double inflation = 0.05);

/// Vertex positions after displacing the control points by `displacements`.
std::vector<Vec3> deformed_vertices(const CageRig& rig, std::span<const Vec3> displacements);

/// Positions sum_j weights(i, j) * control_point_j, i.e. the cage's
/// reconstruction of the rest pose.
std::vector<Vec3> reconstruct_rest(const CageRig& rig);

/// Same topology as `mesh`, vertices moved by the cage.
TriangleMesh apply_deformation(const CageRig& rig, std::span<const Vec3> displacements,
                               const TriangleMesh& mesh);

}  // namespace advgrasp
