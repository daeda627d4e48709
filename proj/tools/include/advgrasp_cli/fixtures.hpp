#pragma once

#include <string>
#include <vector>

#include "advgrasp/mesh.hpp"
#include "advgrasp/quality.hpp"

namespace advgrasp::cli {

struct FixtureGrasp {
  std::string name;  ///< e.g. "box_2f"
  GraspConfig grasp;
};

/// Synthetic stand-ins for scanned household objects: a box, an icosphere
/// and a capsule of roughly 10 cm, each with a two- and a three-finger grasp
/// through the centroid plane.
struct Fixture {
  std::string name;
  TriangleMesh mesh;
  std::vector<FixtureGrasp> grasps;
};

std::vector<Fixture> make_fixtures();

}  // namespace advgrasp::cli
