#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "advgrasp/attack.hpp"
#include "advgrasp/evaluation.hpp"
#include "advgrasp/mesh.hpp"
#include "advgrasp/quality.hpp"

namespace advgrasp::cli {

using json = nlohmann::ordered_json;

/// A grasp config document together with the mesh it refers to.
///
/// `object_path` is kept exactly as written; relative paths resolve against
/// the directory holding the config. Snap contacts are resolved on load, so
/// `grasp.contacts` always holds face/barycentric bindings.
struct GraspDocument {
  std::string object_path;
  std::filesystem::path resolved_mesh_path;
  TriangleMesh mesh;
  GraspConfig grasp;
};

/// Throws ParseError on malformed JSON or fields, IoError when the mesh
/// cannot be read.
GraspDocument load_grasp_document(const std::filesystem::path& config_path);

/// Parses a document that is already in memory. `base_dir` anchors a
/// relative object_path.
GraspDocument parse_grasp_document(const json& doc, const std::filesystem::path& base_dir);

/// Echo form: every contact as {face_index, barycentric}.
json grasp_to_json(const std::string& object_path, const GraspConfig& grasp);

json attack_config_to_json(const AttackConfig& config);
json objective_to_json(const ObjectiveValue& value);
json round_to_json(const RoundReport& round);
json evaluation_to_json(const EvalReport& report);

std::string_view to_string(ForceNorm norm);
std::string_view to_string(CentroidMode mode);

/// Writes `doc` indented by two spaces with a trailing newline.
void write_json(const json& doc, const std::filesystem::path& path);

}  // namespace advgrasp::cli
