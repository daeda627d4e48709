#include "advgrasp/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "advgrasp/errors.hpp"

namespace advgrasp {

TriangleMesh make_grid_box(const Vec3& lo, const Vec3& hi, const std::array<int, 3>& divisions) {
  for (int d : divisions) {
    if (d < 1) throw GeometryError("make_grid_box: divisions must be >= 1");
  }
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::map<std::array<int, 3>, int> index_of;

  auto vertex_id = [&](const std::array<int, 3>& ijk) {
    auto [it, inserted] = index_of.try_emplace(ijk, static_cast<int>(vertices.size()));
    if (inserted) {
      Vec3 p;
      for (int a = 0; a < 3; ++a) {
        // Hit the bounds exactly at both ends of every axis.
        p[a] = ijk[a] == divisions[a]
                   ? hi[a]
                   : lo[a] + (hi[a] - lo[a]) * static_cast<double>(ijk[a]) / divisions[a];
      }
      vertices.push_back(p);
    }
    return it->second;
  };

  for (int axis = 0; axis < 3; ++axis) {
    const int b = (axis + 1) % 3;
    const int c = (axis + 2) % 3;
    for (int side = 0; side < 2; ++side) {
      for (int i = 0; i < divisions[b]; ++i) {
        for (int j = 0; j < divisions[c]; ++j) {
          auto corner = [&](int di, int dj) {
            std::array<int, 3> ijk{};
            ijk[axis] = side == 0 ? 0 : divisions[axis];
            ijk[b] = i + di;
            ijk[c] = j + dj;
            return vertex_id(ijk);
          };
          const int v00 = corner(0, 0);
          const int v10 = corner(1, 0);
          const int v11 = corner(1, 1);
          const int v01 = corner(0, 1);
          // (b, c, axis) is right-handed, so (00, 10, 11) winds around +axis.
          if (side == 1) {
            faces.push_back({v00, v10, v11});
            faces.push_back({v00, v11, v01});
          } else {
            faces.push_back({v00, v11, v10});
            faces.push_back({v00, v01, v11});
          }
        }
      }
    }
  }
  return TriangleMesh(std::move(vertices), std::move(faces));
}

TriangleMesh make_box(const Vec3& size, int divisions_per_edge) {
  return make_grid_box(-0.5 * size, 0.5 * size,
                       {divisions_per_edge, divisions_per_edge, divisions_per_edge});
}

TriangleMesh make_icosphere(double radius, int levels) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> vertices{
      {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1},
  };
  for (Vec3& v : vertices) v.normalize();
  std::vector<Face> faces{
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1},
  };

  for (int level = 0; level < levels; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto [it, inserted] = midpoint.try_emplace(key, static_cast<int>(vertices.size()));
      if (inserted) vertices.push_back((vertices[a] + vertices[b]).normalized());
      return it->second;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const Face& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  for (Vec3& v : vertices) v *= radius;
  return TriangleMesh(std::move(vertices), std::move(faces));
}

TriangleMesh make_cube_sphere(double radius, int divisions) {
  const TriangleMesh cube =
      make_grid_box(Vec3::Constant(-1.0), Vec3::Constant(1.0), {divisions, divisions, divisions});
  std::vector<Vec3> vertices = cube.vertices();
  for (Vec3& v : vertices) v = radius * v.normalized();
  return cube.with_vertices(std::move(vertices));
}

TriangleMesh make_capsule(double radius, double half_length, int segments, int cap_rings,
                          int body_rings) {
  if (segments < 3 || cap_rings < 1 || body_rings < 1) {
    throw GeometryError("make_capsule: resolution too low");
  }
  // Rings listed top to bottom as (ring radius, z).
  std::vector<std::pair<double, double>> rings;
  for (int j = 1; j <= cap_rings; ++j) {
    const double theta = (std::numbers::pi / 2.0) * j / cap_rings;
    rings.emplace_back(radius * std::sin(theta), half_length + radius * std::cos(theta));
  }
  for (int j = 1; j < body_rings; ++j) {
    rings.emplace_back(radius, half_length - 2.0 * half_length * j / body_rings);
  }
  for (int j = cap_rings; j >= 1; --j) {
    const double theta = (std::numbers::pi / 2.0) * j / cap_rings;
    rings.emplace_back(radius * std::sin(theta), -half_length - radius * std::cos(theta));
  }

  std::vector<Vec3> vertices;
  vertices.emplace_back(0.0, 0.0, half_length + radius);
  for (const auto& [r, z] : rings) {
    for (int s = 0; s < segments; ++s) {
      const double phi = 2.0 * std::numbers::pi * s / segments;
      vertices.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
  }
  const int bottom = static_cast<int>(vertices.size());
  vertices.emplace_back(0.0, 0.0, -half_length - radius);

  auto ring_vertex = [&](int ring, int s) { return 1 + ring * segments + (s % segments); };
  std::vector<Face> faces;
  for (int s = 0; s < segments; ++s) faces.push_back({0, ring_vertex(0, s), ring_vertex(0, s + 1)});
  for (int ring = 0; ring + 1 < static_cast<int>(rings.size()); ++ring) {
    for (int s = 0; s < segments; ++s) {
      const int a = ring_vertex(ring, s);
      const int b = ring_vertex(ring + 1, s);
      const int c = ring_vertex(ring + 1, s + 1);
      const int d = ring_vertex(ring, s + 1);
      faces.push_back({a, b, c});
      faces.push_back({a, c, d});
    }
  }
  const int last = static_cast<int>(rings.size()) - 1;
  for (int s = 0; s < segments; ++s) {
    faces.push_back({bottom, ring_vertex(last, s + 1), ring_vertex(last, s)});
  }
  return TriangleMesh(std::move(vertices), std::move(faces));
}

}  // namespace advgrasp
