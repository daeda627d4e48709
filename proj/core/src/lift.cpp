#include <algorithm>
#include <numeric>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

#include "advgrasp/errors.hpp"
#include "advgrasp/quality.hpp"
#include "advgrasp/simplex.hpp"

namespace advgrasp {

GraspScene assemble_scene(const TriangleMesh& mesh, const GraspConfig& grasp) {
  if (grasp.contacts.empty()) throw std::invalid_argument("grasp has no contacts");
  GraspScene scene;
  scene.centroid = center_of_mass(mesh, grasp.centroid_mode);
  scene.radius = max_vertex_distance(mesh, scene.centroid);
  scene.contacts.reserve(grasp.contacts.size());
  for (const ContactBinding& b : grasp.contacts) {
    scene.contacts.push_back(make_contact_frame(eval_contact(mesh, b), grasp.friction));
  }
  return scene;
}

namespace {

// Variable layout: for each contact, one coefficient per cone edge followed
// by the two torsion magnitudes (about +n and -n). The bound t, when
// present, is the last column.
struct LiftLayout {
  std::vector<int> offset;
  int columns = 0;

  explicit LiftLayout(std::span<const ContactFrame> contacts) {
    for (const ContactFrame& c : contacts) {
      offset.push_back(columns);
      columns += static_cast<int>(c.edges.size()) + 2;
    }
  }
};

double normal_component(const ContactFrame& c, const Vec3& edge) {
  return edge.dot(c.inward_normal);
}

// Equilibrium rows and torsion rows shared by the optimizing and the
// feasibility forms. `total` is the full column count including t.
void add_physics_rows(LinearProgram& lp, std::span<const ContactFrame> contacts,
                      const LiftLayout& layout, int total, const Vec3& centroid, double gamma,
                      const Wrench& external) {
  Eigen::MatrixXd eq = Eigen::MatrixXd::Zero(6, total);
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    const ContactFrame& c = contacts[i];
    const Vec3 arm = c.position - centroid;
    const int base = layout.offset[i];
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
      eq.block<3, 1>(0, base + k) = c.edges[k];
      eq.block<3, 1>(3, base + k) = arm.cross(c.edges[k]);
    }
    const int tors = base + static_cast<int>(c.edges.size());
    eq.block<3, 1>(3, tors) = c.inward_normal;
    eq.block<3, 1>(3, tors + 1) = -c.inward_normal;
  }
  const Wrench6 rhs = -external.stacked();
  for (int r = 0; r < 6; ++r) lp.add_row(eq.row(r), RowSense::Equal, rhs(r));

  for (std::size_t i = 0; i < contacts.size(); ++i) {
    const ContactFrame& c = contacts[i];
    const int base = layout.offset[i];
    const int tors = base + static_cast<int>(c.edges.size());
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(total);
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
      row(base + k) = -gamma * normal_component(c, c.edges[k]);
    }
    row(tors) = 1.0;
    row(tors + 1) = 1.0;
    lp.add_row(row, RowSense::LessEqual, 0.0);
  }
}

Eigen::RowVectorXd normal_force_row(const ContactFrame& c, int base, int total) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(total);
  for (std::size_t k = 0; k < c.edges.size(); ++k) row(base + k) = normal_component(c, c.edges[k]);
  return row;
}

// Rebuilds forces from the LP solution and checks them against the raw
// constraints, independent of the tableau.
LiftSolution recover(std::span<const ContactFrame> contacts, const LiftLayout& layout,
                     const Eigen::VectorXd& x, const Vec3& centroid, double gamma,
                     const Wrench& external) {
  LiftSolution sol;
  sol.feasible = true;
  Wrench6 total = external.stacked();
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    const ContactFrame& c = contacts[i];
    const int base = layout.offset[i];
    Vec3 force = Vec3::Zero();
    double normal = 0.0;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
      force += x(base + k) * c.edges[k];
      normal += x(base + k) * normal_component(c, c.edges[k]);
    }
    const int tors = base + static_cast<int>(c.edges.size());
    const double torsion = x(tors) - x(tors + 1);
    if (std::abs(torsion) > gamma * normal + 1e-9) {
      throw NumericalError("lift LP: torsion bound violated after solve");
    }
    Wrench6 w;
    w << force, (c.position - centroid).cross(force) + torsion * c.inward_normal;
    total += w;
    sol.per_contact_forces.push_back(force);
    sol.per_contact_normal_forces.push_back(normal);
    sol.per_contact_torsion.push_back(torsion);
  }
  sol.equilibrium_residual = total.norm();
  if (sol.equilibrium_residual > 1e-6) {
    throw NumericalError("lift LP: equilibrium residual " +
                         std::to_string(sol.equilibrium_residual) + " exceeds 1e-6");
  }
  return sol;
}

void check_contacts(std::span<const ContactFrame> contacts, double gamma) {
  if (contacts.empty()) throw std::invalid_argument("lift LP: need at least one contact");
  if (!(gamma >= 0.0)) throw std::invalid_argument("lift LP: gamma must be >= 0");
}

}  // namespace

LiftSolution solve_min_force(std::span<const ContactFrame> contacts, const Vec3& centroid,
                             double gamma, const Wrench& external, ForceNorm norm) {
  check_contacts(contacts, gamma);
  if (!external.stacked().allFinite()) throw std::invalid_argument("lift LP: external not finite");

  const LiftLayout layout(contacts);
  const int t_col = layout.columns;
  const int total = layout.columns + 1;
  LinearProgram lp(total);
  lp.set_objective(t_col, 1.0);
  add_physics_rows(lp, contacts, layout, total, centroid, gamma, external);

  if (norm == ForceNorm::LInf) {
    for (std::size_t i = 0; i < contacts.size(); ++i) {
      Eigen::RowVectorXd row = normal_force_row(contacts[i], layout.offset[i], total);
      row(t_col) = -1.0;
      lp.add_row(row, RowSense::LessEqual, 0.0);
    }
  } else {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(total);
    for (std::size_t i = 0; i < contacts.size(); ++i) {
      row += normal_force_row(contacts[i], layout.offset[i], total);
    }
    row(t_col) = -1.0;
    lp.add_row(row, RowSense::LessEqual, 0.0);
  }

  const LpResult res = lp.solve();
  if (res.status == LpStatus::Infeasible) return LiftSolution{};
  if (res.status != LpStatus::Optimal) {
    throw NumericalError("lift LP: solver stopped with status " + std::string(to_string(res.status)));
  }
  LiftSolution sol = recover(contacts, layout, res.x, centroid, gamma, external);
  const auto& fn = sol.per_contact_normal_forces;
  sol.min_max_normal_force = norm == ForceNorm::LInf
                                 ? *std::max_element(fn.begin(), fn.end())
                                 : std::accumulate(fn.begin(), fn.end(), 0.0);
  const double load = external.norm();
  sol.lc_value = (load == 0.0 || sol.min_max_normal_force <= 0.0)
                     ? 0.0
                     : load / sol.min_max_normal_force;
  return sol;
}

LiftSolution lift_capability(const GraspScene& scene, const GraspConfig& grasp) {
  return solve_min_force(scene.contacts, scene.centroid, grasp.friction.gamma,
                         gravity_wrench(grasp.mass_kg), grasp.force_norm);
}

LiftSolution lift_capability(const TriangleMesh& mesh, const GraspConfig& grasp) {
  return lift_capability(assemble_scene(mesh, grasp), grasp);
}

bool feasible_under_cap(std::span<const ContactFrame> contacts, const Vec3& centroid,
                        double gamma, double per_contact_cap, const Wrench& external) {
  check_contacts(contacts, gamma);
  if (!(per_contact_cap >= 0.0)) throw std::invalid_argument("feasible_under_cap: cap must be >= 0");

  const LiftLayout layout(contacts);
  const int total = layout.columns;
  LinearProgram lp(total);
  add_physics_rows(lp, contacts, layout, total, centroid, gamma, external);
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    lp.add_row(normal_force_row(contacts[i], layout.offset[i], total), RowSense::LessEqual,
               per_contact_cap);
  }
  const LpResult res = lp.solve();
  if (res.status == LpStatus::Infeasible) return false;
  if (res.status != LpStatus::Optimal) {
    throw NumericalError("feasibility LP: solver stopped with status " +
                         std::string(to_string(res.status)));
  }
  const LiftSolution sol = recover(contacts, layout, res.x, centroid, gamma, external);
  for (double fn : sol.per_contact_normal_forces) {
    if (fn > per_contact_cap + 1e-9 * std::max(1.0, per_contact_cap)) {
      throw NumericalError("feasibility LP: normal force exceeds cap after solve");
    }
  }
  return true;
}

bool feasible_under_cap(const TriangleMesh& mesh, const GraspConfig& grasp,
                        double per_contact_cap, const Wrench& external) {
  const GraspScene scene = assemble_scene(mesh, grasp);
  return feasible_under_cap(scene.contacts, scene.centroid, grasp.friction.gamma,
                            per_contact_cap, external);
}

}  // namespace advgrasp
