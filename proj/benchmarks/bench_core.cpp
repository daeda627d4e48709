#include <benchmark/benchmark.h>

#include <vector>

#include "advgrasp/attack.hpp"
#include "advgrasp/cage.hpp"
#include "advgrasp/mesh.hpp"
#include "advgrasp/quality.hpp"
#include "advgrasp/shapes.hpp"

namespace {

using namespace advgrasp;

struct Scene {
  TriangleMesh mesh;
  GraspConfig grasp;
};

Scene box_scene(int contacts) {
  Scene s{make_box(Vec3(0.06, 0.08, 0.10), 9), {}};
  const std::vector<Vec3> points{{0.03, 0.0, 0.0},   {-0.03, 0.02, 0.0}, {-0.03, -0.02, 0.0},
                                 {0.0, 0.04, 0.01},  {0.0, -0.04, 0.01}, {0.01, 0.0, 0.05}};
  for (int i = 0; i < contacts; ++i) s.grasp.contacts.push_back(snap_to_surface(s.mesh, points[i]));
  return s;
}

void BM_LiftCapability(benchmark::State& state) {
  const Scene s = box_scene(static_cast<int>(state.range(0)));
  const GraspScene scene = assemble_scene(s.mesh, s.grasp);
  for (auto _ : state) benchmark::DoNotOptimize(lift_capability(scene, s.grasp));
}
BENCHMARK(BM_LiftCapability)->Arg(2)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_SampledMargin(benchmark::State& state) {
  const Scene s = box_scene(static_cast<int>(state.range(0)));
  const GraspScene scene = assemble_scene(s.mesh, s.grasp);
  for (auto _ : state) benchmark::DoNotOptimize(grasp_stability(scene, s.grasp));
}
BENCHMARK(BM_SampledMargin)->Arg(2)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ExactMargin(benchmark::State& state) {
  Scene s = box_scene(static_cast<int>(state.range(0)));
  s.grasp.friction.cone_edges = 4;
  const GraspScene scene = assemble_scene(s.mesh, s.grasp);
  StabilityOptions opt;
  opt.exact = true;
  for (auto _ : state) benchmark::DoNotOptimize(grasp_stability(scene, s.grasp, opt));
}
BENCHMARK(BM_ExactMargin)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BuildCage(benchmark::State& state) {
  const TriangleMesh mesh = make_icosphere(0.04, 3);
  const double size = 0.04 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_cage(mesh, size));
}
BENCHMARK(BM_BuildCage)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Objective(benchmark::State& state) {
  const Scene s = box_scene(2);
  const AttackConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(objective(s.mesh, s.grasp, config, false));
}
BENCHMARK(BM_Objective)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
