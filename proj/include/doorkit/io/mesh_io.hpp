#pragma once

#include <filesystem>
#include <string>

#include "doorkit/geometry/mesh.hpp"

namespace doorkit::io {

// Wavefront OBJ: "v x y z" and "f" records (polygons fan-triangulated,
// "i/t/n" and negative indices accepted). Other records are ignored. The mesh
// is taken as Z-up; pass y_up to convert Y-up exports.
geometry::TriangleMesh parse_obj(const std::string& text, bool y_up = false);
geometry::TriangleMesh load_obj(const std::filesystem::path& path, bool y_up = false);

}  // namespace doorkit::io
