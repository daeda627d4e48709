#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "advgrasp/errors.hpp"
#include "advgrasp/mesh.hpp"

namespace advgrasp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(std::string_view origin, std::size_t line, const std::string& what) {
  throw ParseError(std::string(origin) + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view tok, std::string_view origin, std::size_t line) {
  double value = 0.0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) fail(origin, line, "bad number '" + std::string(tok) + "'");
  return value;
}

int parse_index(std::string_view tok, std::size_t vertex_count, std::string_view origin,
                std::size_t line) {
  // "7", "7/2", "7//3", "7/2/3": only the position index matters.
  const auto slash = tok.find('/');
  if (slash != std::string_view::npos) tok = tok.substr(0, slash);
  long value = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    fail(origin, line, "bad face index '" + std::string(tok) + "'");
  }
  const long n = static_cast<long>(vertex_count);
  const long resolved = value > 0 ? value - 1 : n + value;
  if (resolved < 0 || resolved >= n) {
    fail(origin, line, "face index " + std::to_string(value) + " out of range");
  }
  return static_cast<int>(resolved);
}

}  // namespace

TriangleMesh parse_obj(std::string_view text, std::string_view origin) {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                     : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto tokens = split_ws(line);
    if (tokens[0] == "v") {
      if (tokens.size() < 4) fail(origin, line_no, "vertex record needs 3 coordinates");
      vertices.emplace_back(parse_double(tokens[1], origin, line_no),
                            parse_double(tokens[2], origin, line_no),
                            parse_double(tokens[3], origin, line_no));
    } else if (tokens[0] == "f") {
      if (tokens.size() != 4) fail(origin, line_no, "non-triangular face");
      faces.push_back({parse_index(tokens[1], vertices.size(), origin, line_no),
                       parse_index(tokens[2], vertices.size(), origin, line_no),
                       parse_index(tokens[3], vertices.size(), origin, line_no)});
    }
    // vn, vt, o, g, s, usemtl, mtllib: ignored; normals are recomputed.
  }
  if (vertices.empty() || faces.empty()) {
    throw ParseError(std::string(origin) + ": no geometry");
  }
  try {
    return TriangleMesh(std::move(vertices), std::move(faces));
  } catch (const GeometryError& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open mesh file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading mesh file '" + path.string() + "'");
  return parse_obj(buffer.str(), path.string());
}

namespace {

void append_double(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

}  // namespace

std::string format_obj(const TriangleMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertex_count() * 64 + mesh.face_count() * 24);
  for (const Vec3& v : mesh.vertices()) {
    out += "v ";
    append_double(out, v.x());
    out += ' ';
    append_double(out, v.y());
    out += ' ';
    append_double(out, v.z());
    out += '\n';
  }
  for (const Face& f : mesh.faces()) {
    out += "f " + std::to_string(f[0] + 1) + ' ' + std::to_string(f[1] + 1) + ' ' +
           std::to_string(f[2] + 1) + '\n';
  }
  return out;
}

void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write mesh file '" + path.string() + "'");
  out << format_obj(mesh);
  out.flush();
  if (!out) throw IoError("error writing mesh file '" + path.string() + "'");
}

}  // namespace advgrasp
