#include "doorkit/io/map_io.hpp"

#include <fcntl.h>
#include <unistd.h>
#include <yaml-cpp/yaml.h>

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "doorkit/error.hpp"

namespace doorkit::io {

using geometry::CellState;
using geometry::GridMap;

namespace {

// Reads the next whitespace-separated header token, skipping '#' comments.
std::string header_token(const std::string& bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  return bytes.substr(start, pos - start);
}

int header_int(const std::string& bytes, std::size_t& pos, const char* what) {
  const std::string tok = header_token(bytes, pos);
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size() || v < 0) {
    throw Error(std::string("malformed PGM header: bad ") + what + " \"" + tok + "\"");
  }
  return v;
}

}  // namespace

GrayImage parse_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  if (header_token(bytes, pos) != "P5") throw Error("malformed PGM header: expected P5 magic");
  GrayImage img;
  img.width = header_int(bytes, pos, "width");
  img.height = header_int(bytes, pos, "height");
  const int maxval = header_int(bytes, pos, "maxval");
  if (maxval != 255) throw Error("unsupported PGM maxval " + std::to_string(maxval));
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw Error("malformed PGM header: missing separator before pixel data");
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  if (bytes.size() - pos != n) {
    throw Error("PGM dimension mismatch: header declares " + std::to_string(img.width) + "x" +
                std::to_string(img.height) + " but data holds " +
                std::to_string(bytes.size() - pos) + " bytes");
  }
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(img.pixels.begin(), img.pixels.end());
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw Error("cannot write " + tmp.string());
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto n = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (n <= 0) {
      ::close(fd);
      throw Error("short write to " + tmp.string());
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) throw Error("cannot flush " + tmp.string());
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot replace " + path.string() + ": " + ec.message());
}

GrayImage read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file_atomic(path, encode_pgm(img));
}

CellState state_from_pixel(std::uint8_t v) {
  if (v >= kFreeMin) return CellState::Free;
  if (v <= kObstacleMax) return CellState::Obstacle;
  return CellState::Unknown;
}

std::uint8_t pixel_from_state(CellState s) {
  switch (s) {
    case CellState::Free: return kFreeValue;
    case CellState::Obstacle: return kObstacleValue;
    case CellState::Unknown: return kUnknownValue;
  }
  return kUnknownValue;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string s(buf.data(), p);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string map_sidecar_text(const GridMap& map, const std::string& image_name) {
  return "image: " + image_name + "\nresolution: " + format_double(map.resolution()) +
         "\norigin: [" + format_double(map.origin_x()) + ", " + format_double(map.origin_y()) +
         ", 0.0]\n";
}

GridMap load_map(const std::filesystem::path& sidecar) {
  YAML::Node doc;
  try {
    doc = YAML::Load(read_file(sidecar));
  } catch (const YAML::Exception& e) {
    throw Error("malformed map sidecar " + sidecar.string() + ": " + e.what());
  }
  if (!doc.IsMap()) throw Error("malformed map sidecar " + sidecar.string() + ": not a mapping");
  std::string image;
  double resolution = 0.0;
  double ox = 0.0;
  double oy = 0.0;
  try {
    if (!doc["image"] || !doc["resolution"] || !doc["origin"]) {
      throw Error("map sidecar " + sidecar.string() + " needs image, resolution and origin");
    }
    for (const auto& kv : doc) {
      const auto key = kv.first.as<std::string>();
      // Common map-server keys are tolerated; thresholds here are fixed.
      if (key != "image" && key != "resolution" && key != "origin" && key != "negate" &&
          key != "occupied_thresh" && key != "free_thresh" && key != "mode") {
        throw Error("map sidecar " + sidecar.string() + ": unknown key \"" + key + "\"");
      }
    }
    if (doc["negate"] && doc["negate"].as<int>() != 0) {
      throw Error("map sidecar " + sidecar.string() + ": negated images are not supported");
    }
    image = doc["image"].as<std::string>();
    resolution = doc["resolution"].as<double>();
    const auto origin = doc["origin"];
    if (!origin.IsSequence() || origin.size() < 2 || origin.size() > 3) {
      throw Error("map sidecar " + sidecar.string() + ": origin must be [x, y, theta]");
    }
    ox = origin[0].as<double>();
    oy = origin[1].as<double>();
    if (origin.size() == 3 && origin[2].as<double>() != 0.0) {
      throw Error("map sidecar " + sidecar.string() + ": rotated origins are not supported");
    }
  } catch (const YAML::Exception& e) {
    throw Error("malformed map sidecar " + sidecar.string() + ": " + e.what());
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error("map sidecar " + sidecar.string() + ": resolution must be positive");
  }
  std::filesystem::path image_path = image;
  if (image_path.is_relative()) image_path = sidecar.parent_path() / image_path;
  const GrayImage img = read_pgm(image_path);
  std::vector<CellState> cells(img.pixels.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = state_from_pixel(img.pixels[i]);
  return GridMap(img.width, img.height, resolution, ox, oy, std::move(cells));
}

void save_map(const GridMap& map, const std::filesystem::path& sidecar) {
  auto image_path = sidecar;
  image_path.replace_extension(".pgm");
  GrayImage img{map.width(), map.height(), {}};
  img.pixels.reserve(map.size());
  for (const auto s : map.cells()) img.pixels.push_back(pixel_from_state(s));
  write_pgm(image_path, img);
  write_file_atomic(sidecar, map_sidecar_text(map, image_path.filename().string()));
}

}  // namespace doorkit::io
