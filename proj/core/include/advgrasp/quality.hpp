#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "advgrasp/contact.hpp"
#include "advgrasp/mesh.hpp"

namespace advgrasp {

/// Which norm of the per-contact normal-force vector the lift metric bounds.
enum class ForceNorm {
  LInf,  ///< largest single-finger normal force
  L1,    ///< sum of normal forces
};

/// A fixed grasp: where the fingers touch and how the contacts behave.
struct GraspConfig {
  FrictionParams friction;
  std::vector<ContactBinding> contacts;
  double mass_kg = 1.0;
  double per_finger_cap_n = 50.0;
  ForceNorm force_norm = ForceNorm::LInf;
  CentroidMode centroid_mode = CentroidMode::Volume;
};

/// Grasp evaluated on one concrete mesh.
struct GraspScene {
  std::vector<ContactFrame> contacts;
  Vec3 centroid = Vec3::Zero();
  double radius = 0.0;  ///< max vertex distance from the centroid
};

GraspScene assemble_scene(const TriangleMesh& mesh, const GraspConfig& grasp);

struct LiftSolution {
  bool feasible = false;
  double min_max_normal_force = 0.0;  ///< f*, in the configured norm
  double lc_value = 0.0;              ///< |w_external| / f*
  std::vector<Vec3> per_contact_forces;
  std::vector<double> per_contact_normal_forces;
  std::vector<double> per_contact_torsion;  ///< signed torque about each normal (N m)
  double equilibrium_residual = 0.0;
};

/// Smallest normal-force bound under which the contacts can hold `external`:
/// minimize t s.t. sum_i w_i + external = 0, f_i.n <= t (L-inf) or
/// sum_i f_i.n <= t (L1), |torsion_i| <= gamma f_i.n, forces inside the
/// linearized cones. Throws NumericalError if the solver fails or its answer
/// does not re-verify against the raw constraints.
LiftSolution solve_min_force(std::span<const ContactFrame> contacts, const Vec3& centroid,
                             double gamma, const Wrench& external,
                             ForceNorm norm = ForceNorm::LInf);

/// Lift metric against gravity for the configured mass.
LiftSolution lift_capability(const TriangleMesh& mesh, const GraspConfig& grasp);
LiftSolution lift_capability(const GraspScene& scene, const GraspConfig& grasp);

/// True iff `external` can be balanced with every finger's normal force <= cap.
bool feasible_under_cap(std::span<const ContactFrame> contacts, const Vec3& centroid,
                        double gamma, double per_contact_cap, const Wrench& external);
bool feasible_under_cap(const TriangleMesh& mesh, const GraspConfig& grasp,
                        double per_contact_cap, const Wrench& external);

enum class MarginMethod { Sampled, Exact };

struct StabilityMargin {
  double signed_margin = 0.0;  ///< > 0: origin interior; < 0: minus distance to the hull
  double gs_value = 0.0;       ///< max(signed_margin, 0)
  MarginMethod method = MarginMethod::Sampled;
  bool degenerate = false;     ///< exact path only: hull not full-dimensional
};

struct MarginOptions {
  int directions = 8192;
  int refine_steps = 200;
  int refine_starts = 4;   ///< best sampled directions used as descent starts
  int vertex_starts = 64;  ///< best sampled directions used as polar vertex-walk starts
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// min over unit u of max_i w_i.u, from quasi-uniform samples plus local descent.
StabilityMargin signed_hull_margin(const WrenchPrimitiveSet& set, const MarginOptions& options = {});

/// Enumerates every 6-point hyperplane; exact up to rounding. At most 40 primitives.
StabilityMargin exact_hull_margin(const WrenchPrimitiveSet& set);

/// Euclidean distance from the origin to the convex hull of `points`.
double distance_to_hull(std::span<const Wrench6> points);

WrenchPrimitiveSet grasp_primitives(const GraspScene& scene, const FrictionParams& friction);

struct StabilityOptions {
  MarginOptions sampling;
  bool exact = false;  ///< use the exact oracle when the set has <= 40 primitives
};

StabilityMargin grasp_stability(const TriangleMesh& mesh, const GraspConfig& grasp,
                                const StabilityOptions& options = {});
StabilityMargin grasp_stability(const GraspScene& scene, const GraspConfig& grasp,
                                const StabilityOptions& options = {});

}  // namespace advgrasp
