#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace advgrasp {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

/// Axis-aligned box given by its min and max corners.
struct Aabb {
  Vec3 min;
  Vec3 max;

  Vec3 extent() const { return max - min; }
};

/// Immutable triangle surface. Faces are counter-clockwise seen from outside.
///
/// Construction validates indices and rejects degenerate (repeated-index)
/// faces; vertex adjacency is derived once and is symmetric by construction.
class TriangleMesh {
 public:
  TriangleMesh() = default;
  TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return topology_->faces; }
  const std::vector<std::vector<int>>& adjacency() const { return topology_->adjacency; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return topology_->faces.size(); }
  const Vec3& vertex(std::size_t i) const { return vertices_[i]; }

  /// Same topology, new positions. Faces and adjacency are shared, not copied.
  TriangleMesh with_vertices(std::vector<Vec3> vertices) const;

  /// Every undirected edge is shared by exactly two faces.
  bool is_watertight() const;

 private:
  struct Topology {
    std::vector<Face> faces;
    std::vector<std::vector<int>> adjacency;
  };

  std::vector<Vec3> vertices_;
  std::shared_ptr<const Topology> topology_ = std::make_shared<const Topology>();
};

/// A material point on the surface: a face plus barycentric weights.
/// It follows the surface through any deformation that keeps the topology.
struct ContactBinding {
  int face_index = 0;
  std::array<double, 3> barycentric{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

struct SurfacePoint {
  Vec3 position;
  Vec3 inward_normal;
};

enum class CentroidMode {
  Volume,  ///< uniform-density solid, signed tetrahedra
  Area,    ///< uniform-density shell, area-weighted triangle centroids
};

/// Reads an ASCII OBJ file (`v` and triangular `f` records only).
TriangleMesh load_mesh(const std::filesystem::path& path);
/// Parses OBJ text; `origin` is used in diagnostics only.
TriangleMesh parse_obj(std::string_view text, std::string_view origin = "<memory>");
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path);
std::string format_obj(const TriangleMesh& mesh);

/// Signed volume enclosed by the surface (positive for outward orientation).
double signed_volume(const TriangleMesh& mesh);

/// Centroid of the solid bounded by `mesh`. Requires a watertight surface
/// enclosing a volume of at least 1e-12 m^3.
Vec3 center_of_mass(const TriangleMesh& mesh, CentroidMode mode = CentroidMode::Volume);

/// Sum over vertices of |mean(neighbor - v)|^2.
double laplacian_energy(const TriangleMesh& mesh);

Aabb bounding_box(const TriangleMesh& mesh);
Aabb bounding_box(std::span<const Vec3> points);

/// Position and inward unit normal of a bound contact on the current geometry.
SurfacePoint eval_contact(const TriangleMesh& mesh, const ContactBinding& binding);

/// Throws GeometryError unless the binding indexes a face of `mesh` and its
/// weights are nonnegative and sum to one within 1e-12.
void validate_binding(const TriangleMesh& mesh, const ContactBinding& binding);

/// Binding for the surface point closest to `point`.
ContactBinding snap_to_surface(const TriangleMesh& mesh, const Vec3& point);

/// Largest distance from `center` to any vertex.
double max_vertex_distance(const TriangleMesh& mesh, const Vec3& center);

}  // namespace advgrasp
