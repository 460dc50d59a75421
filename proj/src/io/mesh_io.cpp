#include "doorkit/io/mesh_io.hpp"

#include <sstream>

#include "doorkit/error.hpp"
#include "doorkit/io/map_io.hpp"

namespace doorkit::io {

geometry::TriangleMesh parse_obj(const std::string& text, bool y_up) {
  geometry::TriangleMesh mesh;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      geometry::Point3 p;
      if (!(ls >> p.x >> p.y >> p.z)) {
        throw Error("obj line " + std::to_string(line_no) + ": malformed vertex");
      }
      if (y_up) p = {p.x, -p.z, p.y};
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        int v = 0;
        try {
          v = std::stoi(tok.substr(0, tok.find('/')));
        } catch (const std::exception&) {
          throw Error("obj line " + std::to_string(line_no) + ": malformed face index \"" + tok +
                      "\"");
        }
        const int n = static_cast<int>(mesh.vertices.size());
        idx.push_back(v > 0 ? v - 1 : n + v);
      }
      if (idx.size() < 3) throw Error("obj line " + std::to_string(line_no) + ": face needs 3 vertices");
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
        mesh.triangles.push_back({idx[0], idx[k], idx[k + 1]});
      }
    }
  }
  const int n = static_cast<int>(mesh.vertices.size());
  for (const auto& t : mesh.triangles) {
    for (const int v : {t[0], t[1], t[2]}) {
      if (v < 0 || v >= n) throw Error("obj face refers to missing vertex " + std::to_string(v + 1));
    }
  }
  return mesh;
}

geometry::TriangleMesh load_obj(const std::filesystem::path& path, bool y_up) {
  return parse_obj(read_file(path), y_up);
}

}  // namespace doorkit::io
