#include "advgrasp/attack.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "advgrasp/errors.hpp"

namespace advgrasp {

std::string_view to_string(AttackMode mode) {
  switch (mode) {
    case AttackMode::LiftOnly: return "alc";
    case AttackMode::StabilityOnly: return "ags";
    case AttackMode::Unified: return "advgrasp";
  }
  return "unknown";
}

std::optional<AttackMode> parse_attack_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "alc") return AttackMode::LiftOnly;
  if (lower == "ags") return AttackMode::StabilityOnly;
  if (lower == "advgrasp") return AttackMode::Unified;
  return std::nullopt;
}

void AttackConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("attack: alpha must be in (0, 1)");
  if (!(t_min > 0.0)) throw std::invalid_argument("attack: t_min must be > 0");
  if (!(t_min <= t0)) throw std::invalid_argument("attack: t_min must not exceed t0");
  if (rounds < 1) throw std::invalid_argument("attack: rounds must be >= 1");
  if (!(perturb_scale > 0.0)) throw std::invalid_argument("attack: perturb_scale must be > 0");
  if (!(cage_size0 > 0.0)) throw std::invalid_argument("attack: cage size must be > 0");
  if (!(cage_inflation > 0.0)) throw std::invalid_argument("attack: cage inflation must be > 0");
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) {
    throw std::invalid_argument("attack: lambda weights must be >= 0");
  }
  if (proposals_per_step < 1) throw std::invalid_argument("attack: proposals_per_step must be >= 1");
}

double weighted_energy(const AttackConfig& config, double lc, double gs_signed,
                       double laplacian) {
  return config.lc_weight() * lc + config.gs_weight() * gs_signed + config.lap_weight() * laplacian;
}

ObjectiveValue objective(const TriangleMesh& mesh, const GraspConfig& grasp,
                         const AttackConfig& config, bool all_components) {
  ObjectiveValue out;
  const GraspScene scene = assemble_scene(mesh, grasp);
  out.laplacian = laplacian_energy(mesh);

  if (all_components || config.lc_weight() != 0.0) {
    const LiftSolution lift = lift_capability(scene, grasp);
    out.has_lc = true;
    out.lc_feasible = lift.feasible;
    out.lc_value = lift.feasible ? lift.lc_value : 0.0;
  }
  if (all_components || config.gs_weight() != 0.0) {
    const StabilityMargin gs = grasp_stability(scene, grasp, config.stability);
    out.has_gs = true;
    out.gs_signed = gs.signed_margin;
    out.gs_value = gs.gs_value;
  }
  out.energy = weighted_energy(config, out.lc_value, out.gs_signed, out.laplacian);
  return out;
}

double uniform01(AttackRng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Proposal propose(const CageRig& rig, double perturb_scale, AttackRng& rng) {
  const std::size_t n = rig.control_point_count();
  if (n == 0) throw std::invalid_argument("propose: rig has no control points");
  Proposal p;
  // Modulo bias is below 2^-50 for any realistic control-point count.
  p.control_index = static_cast<std::size_t>(rng() % n);
  const double eps = perturb_scale * rig.cage_size;
  for (int a = 0; a < 3; ++a) p.delta[a] = eps * (2.0 * uniform01(rng) - 1.0);
  return p;
}

bool metropolis_accept(double delta_energy, double temperature, AttackRng& rng) {
  if (delta_energy <= 0.0) return true;
  return uniform01(rng) < std::exp(-delta_energy / temperature);
}

int annealing_steps(const AttackConfig& config) {
  int steps = 0;
  for (double t = config.t0; t >= config.t_min; t *= config.alpha) ++steps;
  return steps;
}

RoundResult anneal_round(const TriangleMesh& mesh, const GraspConfig& grasp,
                         const AttackConfig& config, double cage_size, AttackRng& rng) {
  config.validate();
  const CageRig rig = build_cage(mesh, cage_size, config.cage_inflation);

  RoundReport report;
  report.cage_size = cage_size;
  report.control_points = rig.control_point_count();

  AttackState state;
  state.displacements.assign(rig.control_point_count(), Vec3::Zero());
  state.temperature = config.t0;
  state.current_energy = objective(mesh, grasp, config).energy;
  state.best_energy = state.current_energy;
  state.best_mesh = mesh;
  report.initial_energy = state.current_energy;

  // The chain moves one control point at a time, so positions are updated
  // through that point's weight column instead of a full reconstruction.
  std::vector<Vec3> current = mesh.vertices();
  std::vector<Vec3> candidate(current.size());

  try {
    while (state.temperature >= config.t_min) {
      for (int k = 0; k < config.proposals_per_step; ++k) {
        const Proposal p = propose(rig, config.perturb_scale, rng);
        const auto column = rig.weights.col(static_cast<Eigen::Index>(p.control_index));
        for (std::size_t i = 0; i < current.size(); ++i) {
          candidate[i] = current[i] + column(static_cast<Eigen::Index>(i)) * p.delta;
        }
        TriangleMesh candidate_mesh = mesh.with_vertices(candidate);
        const double energy = objective(candidate_mesh, grasp, config).energy;
        if (metropolis_accept(energy - state.current_energy, state.temperature, rng)) {
          ++report.accepted;
          state.displacements[p.control_index] += p.delta;
          state.current_energy = energy;
          current.swap(candidate);
          if (energy < state.best_energy) {
            state.best_energy = energy;
            state.best_mesh = std::move(candidate_mesh);
          }
        }
      }
      ++report.steps;
      state.temperature *= config.alpha;
    }
  } catch (const Error& e) {
    report.aborted = true;
    report.abort_reason = e.what();
  }

  report.best_energy = state.best_energy;
  report.best = objective(state.best_mesh, grasp, config, true);
  return {std::move(state.best_mesh), std::move(report)};
}

AttackResult run_attack(const TriangleMesh& mesh, const GraspConfig& grasp,
                        const AttackConfig& config) {
  config.validate();
  AttackRng rng(config.seed);
  AttackResult result;
  result.original = objective(mesh, grasp, config, true);
  result.mesh = mesh;
  double cage_size = config.cage_size0;
  for (int r = 0; r < config.rounds; ++r) {
    RoundResult round = anneal_round(result.mesh, grasp, config, cage_size, rng);
    round.report.round = r;
    result.mesh = std::move(round.best_mesh);
    result.rounds.push_back(std::move(round.report));
    cage_size /= 2.0;
  }
  result.final = objective(result.mesh, grasp, config, true);
  return result;
}

}  // namespace advgrasp
