#include "advgrasp_cli/commands.hpp"

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "advgrasp/errors.hpp"
#include "advgrasp_cli/config.hpp"
#include "advgrasp_cli/fixtures.hpp"

#ifndef ADVGRASP_VERSION
#define ADVGRASP_VERSION "unknown"
#endif

namespace advgrasp::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string mesh;
  std::string out;
  std::string report;
  std::string mode = "advgrasp";
  AttackConfig attack;
  bool exact_gs = false;
};

json header(const char* command) {
  return {{"tool", "advgrasp"}, {"version", ADVGRASP_VERSION}, {"command", command}};
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_json(doc, path);
  }
}

StabilityOptions stability_options(bool exact) {
  StabilityOptions s;
  s.exact = exact;
  return s;
}

json metrics(const TriangleMesh& mesh, const GraspConfig& grasp, bool exact) {
  const LiftSolution lift = lift_capability(mesh, grasp);
  const StabilityMargin gs = grasp_stability(mesh, grasp, stability_options(exact));
  json j{{"lift_feasible", lift.feasible}};
  if (lift.feasible) {
    j["min_max_normal_force_n"] = lift.min_max_normal_force;
    j["lc"] = lift.lc_value;
  }
  j["gs_signed"] = gs.signed_margin;
  j["gs"] = gs.gs_value;
  j["gs_method"] = gs.method == MarginMethod::Exact ? "exact" : "sampled";
  j["laplacian"] = laplacian_energy(mesh);
  return j;
}

int cmd_quality(const Options& o, std::ostream& out) {
  const GraspDocument doc = load_grasp_document(o.config);
  const TriangleMesh mesh = o.mesh.empty() ? doc.mesh : load_mesh(o.mesh);
  json r = header("quality");
  r["config"] = grasp_to_json(doc.object_path, doc.grasp);
  r["metrics"] = metrics(mesh, doc.grasp, o.exact_gs);
  r["evaluation"] = evaluation_to_json(evaluate_grasp(mesh, doc.grasp));
  emit(r, o.report, out);
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const GraspDocument doc = load_grasp_document(o.config);
  const TriangleMesh mesh = o.mesh.empty() ? doc.mesh : load_mesh(o.mesh);
  if (mesh.face_count() != doc.mesh.face_count()) {
    throw ParseError("evaluate: " + o.mesh + " does not share the config mesh's topology");
  }
  json r = header("evaluate");
  r["config"] = grasp_to_json(doc.object_path, doc.grasp);
  r["evaluation"] = evaluation_to_json(evaluate_grasp(mesh, doc.grasp));
  emit(r, o.report, out);
  return kExitOk;
}

// Weighted objective terms; a term the mode leaves out is absent.
json objective_terms(const ObjectiveValue& v, const AttackConfig& c) {
  json t = json::object();
  if (c.lc_weight() != 0.0) t["lc"] = c.lc_weight() * v.lc_value;
  if (c.gs_weight() != 0.0) t["gs"] = c.gs_weight() * v.gs_signed;
  if (c.lap_weight() != 0.0) t["lap"] = c.lap_weight() * v.laplacian;
  return t;
}

int cmd_attack(Options o, std::ostream& out) {
  const std::optional<AttackMode> mode = parse_attack_mode(o.mode);
  if (!mode) throw ParseError("--mode: expected alc, ags or advgrasp");
  o.attack.mode = *mode;
  o.attack.stability = stability_options(o.exact_gs);
  try {
    o.attack.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const GraspDocument doc = load_grasp_document(o.config);
  const AttackResult res = run_attack(doc.mesh, doc.grasp, o.attack);
  save_mesh(res.mesh, o.out);

  json r = header("attack");
  r["config"] = grasp_to_json(doc.object_path, doc.grasp);
  r["attack"] = attack_config_to_json(o.attack);
  r["weights"] = {{"lc", o.attack.lc_weight()},
                  {"gs", o.attack.gs_weight()},
                  {"lap", o.attack.lap_weight()}};
  r["original"] = objective_to_json(res.original);
  r["original"]["terms"] = objective_terms(res.original, o.attack);
  json rounds = json::array();
  for (const RoundReport& round : res.rounds) {
    json j = round_to_json(round);
    j["terms"] = objective_terms(round.best, o.attack);
    rounds.push_back(std::move(j));
  }
  r["rounds"] = std::move(rounds);
  r["final"] = objective_to_json(res.final);
  r["final"]["terms"] = objective_terms(res.final, o.attack);
  r["evaluation"] = {{"before", evaluation_to_json(evaluate_grasp(doc.mesh, doc.grasp))},
                     {"after", evaluation_to_json(evaluate_grasp(res.mesh, doc.grasp))}};
  emit(r, o.report, out);
  return kExitOk;
}

int cmd_fixtures(const Options& o, std::ostream& out) {
  const fs::path dir = o.out.empty() ? fs::path("fixtures") : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const Fixture& f : make_fixtures()) {
    if (!f.mesh.is_watertight()) throw GeometryError("fixture " + f.name + " is not watertight");
    const std::string mesh_name = f.name + ".obj";
    save_mesh(f.mesh, dir / mesh_name);
    out << (dir / mesh_name).string() << '\n';
    for (const FixtureGrasp& g : f.grasps) {
      if (!feasible_under_cap(f.mesh, g.grasp, g.grasp.per_finger_cap_n,
                              gravity_wrench(g.grasp.mass_kg))) {
        throw NumericalError("fixture grasp " + g.name + " cannot hold its mass");
      }
      const fs::path cfg = dir / (g.name + ".json");
      write_json(grasp_to_json(mesh_name, g.grasp), cfg);
      out << cfg.string() << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial shape attacks on fixed robotic grasps", "advgrasp"};
  app.set_version_flag("--version", std::string(ADVGRASP_VERSION));
  app.require_subcommand(1);
  Options o;

  auto* quality = app.add_subcommand("quality", "Print LC, GS and the evaluation metrics");
  quality->add_option("config", o.config, "Grasp config (JSON)")->required();
  quality->add_option("--mesh", o.mesh, "Evaluate this mesh instead of object_path");
  quality->add_option("--report", o.report, "Write the report here instead of stdout");
  quality->add_flag("--exact-gs", o.exact_gs, "Exact GS when the wrench set is small");

  auto* evaluate = app.add_subcommand("evaluate", "Run MinGF / MaxLM / MaxED");
  evaluate->add_option("config", o.config, "Grasp config (JSON)")->required();
  evaluate->add_option("--mesh", o.mesh, "Deformed mesh with the config's topology");
  evaluate->add_option("--report", o.report, "Write the report here instead of stdout");

  auto* attack = app.add_subcommand("attack", "Deform the object to degrade the grasp");
  attack->add_option("config", o.config, "Grasp config (JSON)")->required();
  attack->add_option("--out", o.out, "Adversarial mesh (OBJ)")->required();
  attack->add_option("--report", o.report, "Write the report here instead of stdout");
  attack->add_option("--mode", o.mode, "alc, ags or advgrasp")->capture_default_str();
  attack->add_option("--seed", o.attack.seed, "Annealing seed")->capture_default_str();
  attack->add_option("--rounds", o.attack.rounds)->capture_default_str();
  attack->add_option("--cage-size", o.attack.cage_size0, "Initial cage cell size (m)")
      ->capture_default_str();
  attack->add_option("--lambda1", o.attack.lambda1, "GS weight")->capture_default_str();
  attack->add_option("--lambda2", o.attack.lambda2, "Laplacian weight")->capture_default_str();
  attack->add_option("--t0", o.attack.t0, "Initial temperature")->capture_default_str();
  attack->add_option("--t-min", o.attack.t_min, "Final temperature")->capture_default_str();
  attack->add_option("--alpha", o.attack.alpha, "Cooling factor")->capture_default_str();
  attack->add_flag("--exact-gs", o.exact_gs, "Exact GS when the wrench set is small");

  auto* fixtures = app.add_subcommand("fixtures", "Write the synthetic meshes and grasp configs");
  fixtures->add_option("--out", o.out, "Output directory")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (quality->parsed()) return cmd_quality(o, out);
    if (evaluate->parsed()) return cmd_evaluate(o, out);
    if (attack->parsed()) return cmd_attack(o, out);
    return cmd_fixtures(o, out);
  } catch (const NumericalError& e) {
    err << "advgrasp: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "advgrasp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "advgrasp: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace advgrasp::cli
