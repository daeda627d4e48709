#include "advgrasp_cli/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "advgrasp/errors.hpp"

namespace advgrasp::cli {
namespace {

Vec3 vec3_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw ParseError(std::string(what) + ": expected 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ContactBinding contact_from(const json& j, const TriangleMesh& mesh) {
  if (!j.is_object()) throw ParseError("contact: expected an object");
  if (j.contains("position")) {
    if (!j.value("snap", false)) {
      throw ParseError("contact: a position contact needs \"snap\": true");
    }
    return snap_to_surface(mesh, vec3_from(j.at("position"), "contact position"));
  }
  ContactBinding b;
  b.face_index = j.at("face_index").get<int>();
  const json& bary = j.at("barycentric");
  if (!bary.is_array() || bary.size() != 3) throw ParseError("contact barycentric: expected 3 numbers");
  for (int k = 0; k < 3; ++k) b.barycentric[k] = bary[k].get<double>();
  try {
    validate_binding(mesh, b);
  } catch (const GeometryError& e) {
    throw ParseError(std::string("contact: ") + e.what());
  }
  return b;
}

ForceNorm force_norm_from(const std::string& s) {
  if (s == "linf") return ForceNorm::LInf;
  if (s == "l1") return ForceNorm::L1;
  throw ParseError("force_norm: expected \"linf\" or \"l1\", got \"" + s + "\"");
}

CentroidMode centroid_from(const std::string& s) {
  if (s == "volume") return CentroidMode::Volume;
  if (s == "area") return CentroidMode::Area;
  throw ParseError("centroid: expected \"volume\" or \"area\", got \"" + s + "\"");
}

}  // namespace

std::string_view to_string(ForceNorm norm) { return norm == ForceNorm::L1 ? "l1" : "linf"; }

std::string_view to_string(CentroidMode mode) {
  return mode == CentroidMode::Area ? "area" : "volume";
}

GraspDocument parse_grasp_document(const json& doc, const std::filesystem::path& base_dir) {
  GraspDocument out;
  try {
    if (!doc.is_object()) throw ParseError("grasp config: expected a JSON object");
    out.object_path = doc.at("object_path").get<std::string>();
    const std::filesystem::path p(out.object_path);
    out.resolved_mesh_path = p.is_absolute() ? p : base_dir / p;
    out.mesh = load_mesh(out.resolved_mesh_path);

    GraspConfig& g = out.grasp;
    g.mass_kg = doc.value("mass_kg", g.mass_kg);
    g.friction.mu = doc.value("mu", g.friction.mu);
    g.friction.gamma = doc.value("gamma", g.friction.gamma);
    g.friction.cone_edges = doc.value("cone_edges", g.friction.cone_edges);
    g.per_finger_cap_n = doc.value("per_finger_cap_n", g.per_finger_cap_n);
    if (doc.contains("force_norm")) g.force_norm = force_norm_from(doc["force_norm"].get<std::string>());
    if (doc.contains("centroid")) g.centroid_mode = centroid_from(doc["centroid"].get<std::string>());

    const json& contacts = doc.at("contacts");
    if (!contacts.is_array() || contacts.empty()) {
      throw ParseError("contacts: expected a non-empty array");
    }
    for (const json& c : contacts) g.contacts.push_back(contact_from(c, out.mesh));
  } catch (const json::exception& e) {
    throw ParseError(std::string("grasp config: ") + e.what());
  }
  try {
    out.grasp.friction.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("grasp config: ") + e.what());
  }
  if (!(out.grasp.mass_kg > 0.0)) throw ParseError("grasp config: mass_kg must be > 0");
  if (!(out.grasp.per_finger_cap_n > 0.0)) {
    throw ParseError("grasp config: per_finger_cap_n must be > 0");
  }
  return out;
}

GraspDocument load_grasp_document(const std::filesystem::path& config_path) {
  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open config " + config_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(config_path.string() + ": " + e.what());
  }
  return parse_grasp_document(doc, config_path.parent_path());
}

json grasp_to_json(const std::string& object_path, const GraspConfig& grasp) {
  json contacts = json::array();
  for (const ContactBinding& b : grasp.contacts) {
    contacts.push_back({{"face_index", b.face_index},
                        {"barycentric", {b.barycentric[0], b.barycentric[1], b.barycentric[2]}}});
  }
  return {{"object_path", object_path},
          {"mass_kg", grasp.mass_kg},
          {"mu", grasp.friction.mu},
          {"gamma", grasp.friction.gamma},
          {"cone_edges", grasp.friction.cone_edges},
          {"per_finger_cap_n", grasp.per_finger_cap_n},
          {"force_norm", to_string(grasp.force_norm)},
          {"centroid", to_string(grasp.centroid_mode)},
          {"contacts", std::move(contacts)}};
}

json attack_config_to_json(const AttackConfig& c) {
  return {{"mode", to_string(c.mode)},
          {"seed", c.seed},
          {"lambda1", c.lambda1},
          {"lambda2", c.lambda2},
          {"t0", c.t0},
          {"t_min", c.t_min},
          {"alpha", c.alpha},
          {"cage_size", c.cage_size0},
          {"rounds", c.rounds},
          {"perturb_scale", c.perturb_scale},
          {"cage_inflation", c.cage_inflation},
          {"proposals_per_step", c.proposals_per_step},
          {"exact_gs", c.stability.exact},
          {"gs_directions", c.stability.sampling.directions},
          {"steps_per_round", annealing_steps(c)}};
}

json objective_to_json(const ObjectiveValue& v) {
  json j{{"energy", v.energy}, {"laplacian", v.laplacian}};
  if (v.has_lc) {
    j["lc"] = v.lc_value;
    j["lc_feasible"] = v.lc_feasible;
  }
  if (v.has_gs) {
    j["gs_signed"] = v.gs_signed;
    j["gs"] = v.gs_value;
  }
  return j;
}

json round_to_json(const RoundReport& r) {
  json j{{"round", r.round},
         {"cage_size", r.cage_size},
         {"control_points", r.control_points},
         {"steps", r.steps},
         {"accepted", r.accepted},
         {"initial_energy", r.initial_energy},
         {"best_energy", r.best_energy},
         {"best", objective_to_json(r.best)}};
  if (r.aborted) j["aborted"] = r.abort_reason;
  return j;
}

json evaluation_to_json(const EvalReport& r) {
  json breaks = json::array();
  for (double f : r.disturbance.per_direction_break_force) breaks.push_back(f);
  return {{"min_grasp_force_n", r.min_grasp_force.value},
          {"min_grasp_force_flagged", r.min_grasp_force.flagged},
          {"max_lift_mass_kg", r.max_lift_mass.value},
          {"max_lift_mass_flagged", r.max_lift_mass.flagged},
          {"max_external_disturbance_n", r.disturbance.max_external_disturbance},
          {"max_external_disturbance_flagged", r.disturbance.flagged},
          {"break_force_per_direction_n", std::move(breaks)}};
}

void write_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace advgrasp::cli
