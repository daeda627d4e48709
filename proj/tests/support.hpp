#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Geometry>

#include "advgrasp/mesh.hpp"
#include "advgrasp/quality.hpp"
#include "advgrasp/shapes.hpp"

namespace advgrasp::test {

inline TriangleMesh unit_cube() {
  return make_grid_box(Vec3(0, 0, 0), Vec3(1, 1, 1), {1, 1, 1});
}

// Unit sphere whose polar cells at +-x are flat squares, so the two snapped
// contacts have normals exactly along -+x.
inline TriangleMesh unit_sphere() { return make_cube_sphere(1.0, 5); }

inline GraspConfig antipodal_sphere_grasp(const TriangleMesh& sphere) {
  GraspConfig g;
  g.contacts.push_back(snap_to_surface(sphere, Vec3(1, 0, 0)));
  g.contacts.push_back(snap_to_surface(sphere, Vec3(-1, 0, 0)));
  return g;
}

// Star-shaped blob: icosphere vertices pushed radially by seeded factors in
// [0.7, 1.3], then shifted. Stays watertight and outward oriented.
inline TriangleMesh random_blob(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale(0.7, 1.3);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  const TriangleMesh base = make_icosphere(1.0, 2);
  const Vec3 offset(shift(rng), shift(rng), shift(rng));
  std::vector<Vec3> v;
  for (const Vec3& p : base.vertices()) v.push_back(p * scale(rng) + offset);
  return base.with_vertices(std::move(v));
}

// Centroid by summing signed tetrahedra (origin, a, b, c) directly.
inline Vec3 tetra_sum_centroid(const TriangleMesh& mesh) {
  double volume = 0.0;
  Vec3 moment = Vec3::Zero();
  for (const Face& f : mesh.faces()) {
    const Vec3& a = mesh.vertex(f[0]);
    const Vec3& b = mesh.vertex(f[1]);
    const Vec3& c = mesh.vertex(f[2]);
    const double v = a.dot(b.cross(c)) / 6.0;
    volume += v;
    moment += v * (a + b + c) / 4.0;
  }
  return moment / volume;
}

inline std::vector<Wrench6> cross_polytope() {
  std::vector<Wrench6> pts;
  for (int i = 0; i < 6; ++i) {
    for (double s : {1.0, -1.0}) {
      Wrench6 w = Wrench6::Zero();
      w(i) = s;
      pts.push_back(w);
    }
  }
  return pts;
}

inline WrenchPrimitiveSet as_set(std::vector<Wrench6> pts) {
  WrenchPrimitiveSet s;
  s.primitives = std::move(pts);
  return s;
}

// Uniform points in the unit 6-ball.
inline std::vector<Wrench6> random_ball_points(std::mt19937_64& rng, int count) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::vector<Wrench6> pts;
  for (int i = 0; i < count; ++i) {
    Wrench6 w;
    for (int k = 0; k < 6; ++k) w(k) = gauss(rng);
    w *= std::pow(unit(rng), 1.0 / 6.0) / w.norm();
    pts.push_back(w);
  }
  return pts;
}

}  // namespace advgrasp::test
