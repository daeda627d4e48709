#include "advgrasp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Geometry>

#include "advgrasp/errors.hpp"

namespace advgrasp {

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)) {
  const auto n = static_cast<int>(vertices_.size());
  std::vector<std::vector<int>> adjacency(vertices_.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Face& face = faces[f];
    for (int idx : face) {
      if (idx < 0 || idx >= n) {
        throw GeometryError("face " + std::to_string(f) + " references vertex " +
                            std::to_string(idx) + " out of range [0, " + std::to_string(n) + ")");
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw GeometryError("face " + std::to_string(f) + " is degenerate (repeated vertex index)");
    }
    for (int k = 0; k < 3; ++k) {
      const int a = face[k];
      const int b = face[(k + 1) % 3];
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
    }
  }
  for (auto& neighbors : adjacency) {
    std::sort(neighbors.begin(), neighbors.end());
    neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
  }
  topology_ = std::make_shared<const Topology>(Topology{std::move(faces), std::move(adjacency)});
}

TriangleMesh TriangleMesh::with_vertices(std::vector<Vec3> vertices) const {
  if (vertices.size() != vertices_.size()) {
    throw GeometryError("with_vertices: vertex count mismatch");
  }
  TriangleMesh out;
  out.vertices_ = std::move(vertices);
  out.topology_ = topology_;
  return out;
}

bool TriangleMesh::is_watertight() const {
  if (faces().empty()) return false;
  std::map<std::pair<int, int>, int> edge_use;
  for (const Face& face : faces()) {
    for (int k = 0; k < 3; ++k) {
      const int a = face[k];
      const int b = face[(k + 1) % 3];
      ++edge_use[{std::min(a, b), std::max(a, b)}];
    }
  }
  return std::all_of(edge_use.begin(), edge_use.end(),
                     [](const auto& entry) { return entry.second == 2; });
}

namespace {

void require_watertight(const TriangleMesh& mesh, const char* what) {
  if (!mesh.is_watertight()) {
    throw GeometryError(std::string(what) + ": mesh is not watertight");
  }
}

}  // namespace

double signed_volume(const TriangleMesh& mesh) {
  if (mesh.vertex_count() == 0) return 0.0;
  const Vec3& apex = mesh.vertex(0);
  double six_volume = 0.0;
  for (const Face& f : mesh.faces()) {
    const Vec3 a = mesh.vertex(f[0]) - apex;
    const Vec3 b = mesh.vertex(f[1]) - apex;
    const Vec3 c = mesh.vertex(f[2]) - apex;
    six_volume += a.dot(b.cross(c));
  }
  return six_volume / 6.0;
}

Vec3 center_of_mass(const TriangleMesh& mesh, CentroidMode mode) {
  require_watertight(mesh, "center_of_mass");

  // Tetrahedra are fanned from the first vertex instead of the world origin;
  // the decomposition is identical but cancellation is smaller far from 0.
  const Vec3& apex = mesh.vertex(0);
  if (mode == CentroidMode::Area) {
    double area = 0.0;
    Vec3 weighted = Vec3::Zero();
    for (const Face& f : mesh.faces()) {
      const Vec3 a = mesh.vertex(f[0]) - apex;
      const Vec3 b = mesh.vertex(f[1]) - apex;
      const Vec3 c = mesh.vertex(f[2]) - apex;
      const double face_area = 0.5 * (b - a).cross(c - a).norm();
      area += face_area;
      weighted += face_area * (a + b + c) / 3.0;
    }
    if (area <= 0.0) throw GeometryError("center_of_mass: zero surface area");
    return apex + weighted / area;
  }

  double six_volume = 0.0;
  Vec3 weighted = Vec3::Zero();
  for (const Face& f : mesh.faces()) {
    const Vec3 a = mesh.vertex(f[0]) - apex;
    const Vec3 b = mesh.vertex(f[1]) - apex;
    const Vec3 c = mesh.vertex(f[2]) - apex;
    const double tet = a.dot(b.cross(c));
    six_volume += tet;
    weighted += tet * (a + b + c);
  }
  if (std::abs(six_volume) / 6.0 < 1e-12) {
    throw GeometryError("center_of_mass: enclosed volume below 1e-12 m^3");
  }
  // Each tetrahedron (apex, a, b, c) has centroid (a + b + c) / 4 relative to apex.
  return apex + weighted / (4.0 * six_volume);
}

double laplacian_energy(const TriangleMesh& mesh) {
  const auto& adjacency = mesh.adjacency();
  double energy = 0.0;
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    const auto& neighbors = adjacency[v];
    if (neighbors.empty()) {
      throw GeometryError("laplacian_energy: isolated vertex " + std::to_string(v));
    }
    Vec3 offset = Vec3::Zero();
    for (int u : neighbors) offset += mesh.vertex(u) - mesh.vertex(v);
    offset /= static_cast<double>(neighbors.size());
    energy += offset.squaredNorm();
  }
  return energy;
}

Aabb bounding_box(std::span<const Vec3> points) {
  if (points.empty()) throw GeometryError("bounding_box: no points");
  Aabb box{points[0], points[0]};
  for (const Vec3& v : points) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

Aabb bounding_box(const TriangleMesh& mesh) {
  return bounding_box(std::span<const Vec3>(mesh.vertices()));
}

void validate_binding(const TriangleMesh& mesh, const ContactBinding& binding) {
  if (binding.face_index < 0 || static_cast<std::size_t>(binding.face_index) >= mesh.face_count()) {
    throw GeometryError("contact binding face " + std::to_string(binding.face_index) +
                        " out of range");
  }
  double sum = 0.0;
  for (double w : binding.barycentric) {
    if (!(w >= 0.0)) throw GeometryError("contact binding has a negative barycentric weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw GeometryError("contact binding barycentric weights do not sum to 1");
  }
}

SurfacePoint eval_contact(const TriangleMesh& mesh, const ContactBinding& binding) {
  validate_binding(mesh, binding);
  const Face& f = mesh.faces()[binding.face_index];
  const Vec3& p0 = mesh.vertex(f[0]);
  const Vec3& p1 = mesh.vertex(f[1]);
  const Vec3& p2 = mesh.vertex(f[2]);
  const Vec3 e1 = p1 - p0;
  const Vec3 e2 = p2 - p0;
  const Vec3 cross = e1.cross(e2);
  const double scale = e1.norm() * e2.norm();
  const double len = cross.norm();
  if (scale == 0.0 || !(len > 1e-12 * scale)) {
    throw GeometryError("eval_contact: face " + std::to_string(binding.face_index) +
                        " has zero area");
  }
  const auto& w = binding.barycentric;
  return {w[0] * p0 + w[1] * p1 + w[2] * p2, -cross / len};
}

namespace {

// Closest point on triangle (a, b, c) to p, returned as barycentric weights.
// Region classification after Ericson, Real-Time Collision Detection 5.1.5.
std::array<double, 3> closest_barycentric(const Vec3& p, const Vec3& a, const Vec3& b,
                                          const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return {1.0, 0.0, 0.0};

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return {0.0, 1.0, 0.0};

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return {1.0 - v, v, 0.0};
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return {0.0, 0.0, 1.0};

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return {1.0 - w, 0.0, w};
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {0.0, 1.0 - w, w};
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return {1.0 - v - w, v, w};
}

}  // namespace

ContactBinding snap_to_surface(const TriangleMesh& mesh, const Vec3& point) {
  if (mesh.face_count() == 0) throw GeometryError("snap_to_surface: mesh has no faces");
  ContactBinding best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t fi = 0; fi < mesh.face_count(); ++fi) {
    const Face& f = mesh.faces()[fi];
    auto w = closest_barycentric(point, mesh.vertex(f[0]), mesh.vertex(f[1]), mesh.vertex(f[2]));
    for (double& x : w) x = std::max(x, 0.0);
    const double sum = w[0] + w[1] + w[2];
    for (double& x : w) x /= sum;
    const Vec3 q = w[0] * mesh.vertex(f[0]) + w[1] * mesh.vertex(f[1]) + w[2] * mesh.vertex(f[2]);
    const double dist = (q - point).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best.face_index = static_cast<int>(fi);
      best.barycentric = w;
    }
  }
  return best;
}

double max_vertex_distance(const TriangleMesh& mesh, const Vec3& center) {
  double r = 0.0;
  for (const Vec3& v : mesh.vertices()) r = std::max(r, (v - center).norm());
  return r;
}

}  // namespace advgrasp
