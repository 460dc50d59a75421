#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "doorkit/geometry/grid_map.hpp"

namespace doorkit::io {

// Pixel thresholds of the tri-state map image.
inline constexpr int kFreeMin = 250;      // value >= this is Free
inline constexpr int kObstacleMax = 50;   // value <= this is Obstacle
inline constexpr std::uint8_t kFreeValue = 254;
inline constexpr std::uint8_t kObstacleValue = 0;
inline constexpr std::uint8_t kUnknownValue = 205;

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, top row first
};

// Binary PGM (P5, maxval 255). Comments in the header are accepted.
GrayImage parse_pgm(const std::string& bytes);
std::string encode_pgm(const GrayImage& img);
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

geometry::CellState state_from_pixel(std::uint8_t v);
std::uint8_t pixel_from_state(geometry::CellState s);

/// Loads a map from its sidecar (keys image, resolution, origin [x, y, 0]).
/// The image path is resolved relative to the sidecar's directory.
geometry::GridMap load_map(const std::filesystem::path& sidecar);

/// Writes `<stem>.pgm` next to the sidecar and the sidecar itself.
void save_map(const geometry::GridMap& map, const std::filesystem::path& sidecar);

// Sidecar text for a map whose image lives at image_name.
std::string map_sidecar_text(const geometry::GridMap& map, const std::string& image_name);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// Writes through a temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace doorkit::io
