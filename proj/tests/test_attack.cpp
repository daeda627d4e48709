#include <cmath>

#include <gtest/gtest.h>

#include "advgrasp/attack.hpp"
#include "advgrasp/shapes.hpp"
#include "advgrasp_cli/fixtures.hpp"

namespace advgrasp {
namespace {

const cli::Fixture& fixture(const std::string& name) {
  static const std::vector<cli::Fixture> all = cli::make_fixtures();
  for (const cli::Fixture& f : all) {
    if (f.name == name) return f;
  }
  throw std::out_of_range(name);
}

AttackConfig quick_schedule() {
  AttackConfig c;
  c.t0 = 1.0;
  c.t_min = 0.1;
  c.alpha = 0.5;  // 4 steps
  c.rounds = 1;
  c.seed = 3;
  return c;
}

TEST(AttackConfig, DefaultsMatchExperimentalSetup) {
  const AttackConfig c;
  EXPECT_EQ(c.mode, AttackMode::Unified);
  EXPECT_EQ(c.lambda1, 10000.0);
  EXPECT_EQ(c.lambda2, 50.0);
  EXPECT_EQ(c.t0, 1000.0);
  EXPECT_EQ(c.t_min, 1e-5);
  EXPECT_EQ(c.alpha, 0.98);
  EXPECT_EQ(c.cage_size0, 0.04);
  EXPECT_EQ(c.rounds, 5);
  EXPECT_EQ(c.perturb_scale, 0.05);
}

TEST(AttackConfig, Validation) {
  AttackConfig c;
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.t_min = 2000;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.rounds = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.lambda1 = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.t_min = c.t0;
  EXPECT_NO_THROW(c.validate());
}

TEST(AttackMode, ParseAndName) {
  EXPECT_EQ(parse_attack_mode("ALC"), AttackMode::LiftOnly);
  EXPECT_EQ(parse_attack_mode("ags"), AttackMode::StabilityOnly);
  EXPECT_EQ(parse_attack_mode("AdvGrasp"), AttackMode::Unified);
  EXPECT_FALSE(parse_attack_mode("both").has_value());
  EXPECT_EQ(to_string(AttackMode::LiftOnly), "alc");
}

TEST(Objective, WeightedEnergyArithmetic) {
  AttackConfig c;
  EXPECT_NEAR(weighted_energy(c, 1.2, 0.03, 0.001), 301.25, 1e-12);
  c.mode = AttackMode::LiftOnly;
  EXPECT_NEAR(weighted_energy(c, 1.2, 0.03, 0.001), 1.25, 1e-12);
  c.mode = AttackMode::StabilityOnly;
  EXPECT_NEAR(weighted_energy(c, 1.2, 0.03, 0.001), 300.05, 1e-12);
}

TEST(Objective, ModesOmitUnweightedTerms) {
  const cli::Fixture& f = fixture("box");
  const GraspConfig& g = f.grasps[0].grasp;
  AttackConfig c;
  c.mode = AttackMode::LiftOnly;
  ObjectiveValue v = objective(f.mesh, g, c);
  EXPECT_TRUE(v.has_lc);
  EXPECT_FALSE(v.has_gs);
  EXPECT_NEAR(v.energy, v.lc_value + 50 * v.laplacian, 1e-12);
  c.mode = AttackMode::StabilityOnly;
  v = objective(f.mesh, g, c);
  EXPECT_FALSE(v.has_lc);
  EXPECT_TRUE(v.has_gs);
  v = objective(f.mesh, g, c, true);
  EXPECT_TRUE(v.has_lc && v.has_gs);
  EXPECT_NEAR(v.energy, 10000 * v.gs_signed + 50 * v.laplacian, 1e-9);
}

TEST(Propose, SingleBoundedControlPoint) {
  const CageRig rig = build_cage(fixture("box").mesh, 0.04);
  AttackRng rng(1);
  const double eps = 0.05 * 0.04;
  EXPECT_NEAR(eps, 0.002, 1e-15);
  const std::vector<Vec3> zero(rig.control_point_count(), Vec3::Zero());
  for (int i = 0; i < 500; ++i) {
    const Proposal p = propose(rig, 0.05, rng);
    ASSERT_LT(p.control_index, rig.control_point_count());
    EXPECT_LE(p.delta.cwiseAbs().maxCoeff(), eps);
    const auto moved = p.applied_to(zero);
    int changed = 0;
    for (const Vec3& d : moved) changed += d != Vec3::Zero();
    EXPECT_LE(changed, 1);
  }
}

TEST(Propose, SeedFixesSequence) {
  const CageRig rig = build_cage(fixture("box").mesh, 0.04);
  AttackRng a(42);
  AttackRng b(42);
  for (int i = 0; i < 100; ++i) {
    const Proposal pa = propose(rig, 0.05, a);
    const Proposal pb = propose(rig, 0.05, b);
    EXPECT_EQ(pa.control_index, pb.control_index);
    EXPECT_EQ(pa.delta, pb.delta);
  }
}

TEST(Metropolis, ZeroOrNegativeDeltaAlwaysAccepted) {
  AttackRng rng(0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_TRUE(metropolis_accept(0.0, 1e-9, rng));
    EXPECT_TRUE(metropolis_accept(-5.0, 1e-9, rng));
  }
}

TEST(Metropolis, HighTemperatureAcceptanceFrequency) {
  AttackRng rng(9);
  std::uniform_real_distribution<double> delta(0.0, 10.0);
  std::mt19937_64 drng(10);
  int accepted = 0;
  for (int i = 0; i < 1000; ++i) accepted += metropolis_accept(delta(drng), 1000.0, rng);
  EXPECT_GE(accepted, 980);
}

TEST(Metropolis, MatchesBoltzmannProbability) {
  AttackRng rng(12);
  const int n = 20000;
  int accepted = 0;
  for (int i = 0; i < n; ++i) accepted += metropolis_accept(1.0, 1.0, rng);
  EXPECT_NEAR(double(accepted) / n, std::exp(-1.0), 0.01);
}

TEST(Uniform01, RangeAndMean) {
  AttackRng rng(77);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.01);
}

TEST(Annealing, StepCounts) {
  // Steps run while t0 * alpha^k >= t_min.
  const auto oracle = [](double t0, double t_min, double alpha) {
    return static_cast<int>(std::floor(std::log(t_min / t0) / std::log(alpha))) + 1;
  };
  AttackConfig c;
  EXPECT_EQ(annealing_steps(c), oracle(1000, 1e-5, 0.98));
  EXPECT_EQ(annealing_steps(c), 912);
  c.t0 = 100;
  c.alpha = 0.95;
  EXPECT_EQ(annealing_steps(c), 315);
  c.t0 = c.t_min;
  EXPECT_EQ(annealing_steps(c), 1);
}

TEST(Annealing, GreedyLimitNeverWorsens) {
  const cli::Fixture& f = fixture("capsule");
  AttackConfig c;
  c.t0 = 1e-9;
  c.t_min = 1e-9;
  c.proposals_per_step = 20;
  AttackRng rng(5);
  const RoundResult r = anneal_round(f.mesh, f.grasps[0].grasp, c, 0.04, rng);
  EXPECT_FALSE(r.report.aborted);
  EXPECT_LE(r.report.best_energy, r.report.initial_energy);
  EXPECT_EQ(r.best_mesh.faces(), f.mesh.faces());
}

TEST(Annealing, BoxRegression) {
  const cli::Fixture& f = fixture("box");
  AttackConfig c;
  c.t0 = 100;
  c.alpha = 0.95;
  c.rounds = 2;
  c.seed = 7;
  const AttackResult r = run_attack(f.mesh, f.grasps[0].grasp, c);
  EXPECT_LT(r.final.energy, r.original.energy);
  EXPECT_NEAR(r.original.energy, 1815.7813278195511, 1e-6);
  EXPECT_NEAR(r.final.energy, 1139.6383117474179, 1e-6);
}

TEST(RunAttack, HalvesCageEachRound) {
  const cli::Fixture& f = fixture("icosphere");
  AttackConfig c = quick_schedule();
  c.rounds = 3;
  const AttackResult r = run_attack(f.mesh, f.grasps[0].grasp, c);
  ASSERT_EQ(r.rounds.size(), 3u);
  EXPECT_EQ(r.rounds[0].cage_size, 0.04);
  EXPECT_EQ(r.rounds[1].cage_size, 0.02);
  EXPECT_EQ(r.rounds[2].cage_size, 0.01);
  for (std::size_t i = 0; i < r.rounds.size(); ++i) {
    EXPECT_EQ(r.rounds[i].steps, 4);
    EXPECT_LE(r.rounds[i].best_energy, r.rounds[i].initial_energy);
    if (i > 0) EXPECT_LE(r.rounds[i].best_energy, r.rounds[i - 1].best_energy);
  }
  EXPECT_GT(r.rounds[1].control_points, r.rounds[0].control_points);
  EXPECT_EQ(r.mesh.faces(), f.mesh.faces());
  EXPECT_NEAR(r.final.energy, r.rounds.back().best_energy, 1e-9);
}

TEST(RunAttack, SingleRound) {
  const cli::Fixture& f = fixture("icosphere");
  const AttackResult r = run_attack(f.mesh, f.grasps[0].grasp, quick_schedule());
  EXPECT_EQ(r.rounds.size(), 1u);
}

TEST(RunAttack, DeterministicForSeed) {
  const cli::Fixture& f = fixture("capsule");
  const AttackResult a = run_attack(f.mesh, f.grasps[0].grasp, quick_schedule());
  const AttackResult b = run_attack(f.mesh, f.grasps[0].grasp, quick_schedule());
  EXPECT_EQ(a.mesh.vertices(), b.mesh.vertices());
  EXPECT_EQ(a.final.energy, b.final.energy);
}

}  // namespace
}  // namespace advgrasp
