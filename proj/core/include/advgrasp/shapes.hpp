#pragma once

#include <array>

#include "advgrasp/mesh.hpp"

namespace advgrasp {

/// Closed surface of the box [lo, hi] tiled by a regular grid with
/// `divisions[a]` cells along axis a. Grid points shared by neighbouring faces
/// (edges, corners) appear once. Faces are outward and counter-clockwise.
TriangleMesh make_grid_box(const Vec3& lo, const Vec3& hi, const std::array<int, 3>& divisions);

/// Box centered at the origin with the given full edge lengths.
TriangleMesh make_box(const Vec3& size, int divisions_per_edge);

/// Subdivided icosahedron projected onto the sphere. `levels` = 3 gives 642 vertices.
TriangleMesh make_icosphere(double radius, int levels);

/// Grid box projected onto the sphere. With odd `divisions` the six polar
/// cells are planar squares perpendicular to the coordinate axes.
TriangleMesh make_cube_sphere(double radius, int divisions);

/// Cylinder along z with hemispherical end caps, centered at the origin.
TriangleMesh make_capsule(double radius, double half_length, int segments, int cap_rings,
                          int body_rings);

}  // namespace advgrasp
