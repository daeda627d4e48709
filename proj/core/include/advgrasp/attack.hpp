#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "advgrasp/cage.hpp"
#include "advgrasp/mesh.hpp"
#include "advgrasp/quality.hpp"

namespace advgrasp {

enum class AttackMode {
  LiftOnly,       ///< ALC: LC + lambda2 Lap
  StabilityOnly,  ///< AGS: lambda1 GS + lambda2 Lap
  Unified,        ///< AdvGrasp: LC + lambda1 GS + lambda2 Lap
};

std::string_view to_string(AttackMode mode);
/// Accepts "alc", "ags", "advgrasp" (case-insensitive).
std::optional<AttackMode> parse_attack_mode(std::string_view text);

struct AttackConfig {
  AttackMode mode = AttackMode::Unified;
  double lambda1 = 10000.0;
  double lambda2 = 50.0;
  double t0 = 1000.0;
  double t_min = 1e-5;
  double alpha = 0.98;
  double cage_size0 = 0.04;
  int rounds = 5;
  double perturb_scale = 0.05;  ///< proposal half-width as a fraction of the cage size
  double cage_inflation = 0.05;
  int proposals_per_step = 1;
  std::uint64_t seed = 0;
  StabilityOptions stability;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  double lc_weight() const { return mode == AttackMode::StabilityOnly ? 0.0 : 1.0; }
  double gs_weight() const { return mode == AttackMode::LiftOnly ? 0.0 : lambda1; }
  double lap_weight() const { return lambda2; }
};

/// Metric values of one mesh. Components the mode does not weigh are still
/// filled in when requested with `all_components`.
struct ObjectiveValue {
  double energy = 0.0;
  double lc_value = 0.0;
  bool lc_feasible = true;  ///< false: no force balances gravity; LC counted as 0
  double gs_signed = 0.0;
  double gs_value = 0.0;
  double laplacian = 0.0;
  bool has_lc = false;
  bool has_gs = false;
};

/// lc_weight * lc + gs_weight * gs_signed + lap_weight * laplacian.
double weighted_energy(const AttackConfig& config, double lc, double gs_signed, double laplacian);

ObjectiveValue objective(const TriangleMesh& mesh, const GraspConfig& grasp,
                         const AttackConfig& config, bool all_components = false);

/// Deterministic generator for the annealing chain.
using AttackRng = std::mt19937_64;

/// 53-bit uniform draw in [0, 1); bit-identical across standard libraries.
double uniform01(AttackRng& rng);

/// One control point moved by `delta`.
struct Proposal {
  std::size_t control_index = 0;
  Vec3 delta = Vec3::Zero();

  std::vector<Vec3> applied_to(std::vector<Vec3> displacements) const {
    displacements[control_index] += delta;
    return displacements;
  }
};

/// Uniform control point, uniform offset in [-eps, eps]^3 with
/// eps = perturb_scale * rig.cage_size.
Proposal propose(const CageRig& rig, double perturb_scale, AttackRng& rng);

/// Metropolis rule: always accept when delta_energy <= 0, otherwise with
/// probability exp(-delta_energy / temperature).
bool metropolis_accept(double delta_energy, double temperature, AttackRng& rng);

struct AttackState {
  std::vector<Vec3> displacements;
  double temperature = 0.0;
  double current_energy = 0.0;
  double best_energy = 0.0;
  TriangleMesh best_mesh;
};

struct RoundReport {
  int round = 0;
  double cage_size = 0.0;
  std::size_t control_points = 0;
  int steps = 0;
  int accepted = 0;
  double initial_energy = 0.0;
  double best_energy = 0.0;
  ObjectiveValue best;  ///< all components of the round's best mesh
  bool aborted = false;
  std::string abort_reason;
};

struct RoundResult {
  TriangleMesh best_mesh;
  RoundReport report;
};

/// One annealing chain at a fixed cage resolution, starting from `mesh`.
RoundResult anneal_round(const TriangleMesh& mesh, const GraspConfig& grasp,
                         const AttackConfig& config, double cage_size, AttackRng& rng);

/// Number of temperature steps from t0 down to t_min.
int annealing_steps(const AttackConfig& config);

struct AttackResult {
  TriangleMesh mesh;
  ObjectiveValue original;  ///< all components of the input mesh
  ObjectiveValue final;     ///< all components of the returned mesh
  std::vector<RoundReport> rounds;
};

/// Rounds at cage sizes cage_size0 / 2^r; each starts from the previous best.
AttackResult run_attack(const TriangleMesh& mesh, const GraspConfig& grasp,
                        const AttackConfig& config);

}  // namespace advgrasp
