#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace doorkit::io {

struct ImageSize {
  int width = 0;
  int height = 0;
};

// Reads the pixel dimensions from a PNG, JPEG, BMP or binary/ASCII PNM header
// without decoding the image. nullopt for anything else.
std::optional<ImageSize> sniff_image_size(std::string_view bytes);
std::optional<ImageSize> read_image_size(const std::filesystem::path& path);

// MIME type by file extension; application/octet-stream when unknown.
std::string content_type_for(const std::filesystem::path& path);

bool has_image_extension(const std::filesystem::path& path);

}  // namespace doorkit::io
