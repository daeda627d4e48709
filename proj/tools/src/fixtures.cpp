#include "advgrasp_cli/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "advgrasp/shapes.hpp"

namespace advgrasp::cli {
namespace {

GraspConfig grasp_at(const TriangleMesh& mesh, const std::vector<Vec3>& points) {
  GraspConfig g;
  for (const Vec3& p : points) g.contacts.push_back(snap_to_surface(mesh, p));
  return g;
}

Vec3 on_ring(double radius, double angle_deg, double z) {
  const double a = angle_deg * std::numbers::pi / 180.0;
  return {radius * std::cos(a), radius * std::sin(a), z};
}

}  // namespace

std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> out;

  {
    Fixture f{"box", make_box(Vec3(0.06, 0.08, 0.10), 9), {}};
    f.grasps.push_back({"box_2f", grasp_at(f.mesh, {{0.03, 0.0, 0.0}, {-0.03, 0.0, 0.0}})});
    f.grasps.push_back(
        {"box_3f", grasp_at(f.mesh, {{0.03, 0.0, 0.0}, {-0.03, 0.02, 0.0}, {-0.03, -0.02, 0.0}})});
    out.push_back(std::move(f));
  }
  {
    const double r = 0.04;
    Fixture f{"icosphere", make_icosphere(r, 3), {}};
    // The pair sits 6 mm above the centroid; an equatorial pair through the
    // centroid leaves LC almost insensitive to the shape.
    const double z = 0.15 * r;
    const double h = std::sqrt(r * r - z * z);
    f.grasps.push_back({"icosphere_2f", grasp_at(f.mesh, {{h, 0.0, z}, {-h, 0.0, z}})});
    f.grasps.push_back({"icosphere_3f", grasp_at(f.mesh, {on_ring(r, 0.0, 0.0), on_ring(r, 120.0, 0.0),
                                                          on_ring(r, 240.0, 0.0)})});
    out.push_back(std::move(f));
  }
  {
    // 24 segments and 8 body bands: 3.75 degrees lies inside one triangle of
    // a planar cylinder quad, so the normals are horizontal and the binding
    // is off the quad diagonal. The pair sits 25 mm above the centroid.
    const double r = 0.03;
    Fixture f{"capsule", make_capsule(r, 0.04, 24, 6, 8), {}};
    f.grasps.push_back({"capsule_2f", grasp_at(f.mesh, {on_ring(r, 3.75, 0.025),
                                                        on_ring(r, 183.75, 0.025)})});
    f.grasps.push_back({"capsule_3f", grasp_at(f.mesh, {on_ring(r, 3.75, 0.005),
                                                        on_ring(r, 123.75, 0.005),
                                                        on_ring(r, 243.75, 0.005)})});
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace advgrasp::cli
