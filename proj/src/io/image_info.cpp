#include "doorkit/io/image_info.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace doorkit::io {

namespace {

std::uint32_t be16(std::string_view b, std::size_t at) {
  return (static_cast<std::uint8_t>(b[at]) << 8) | static_cast<std::uint8_t>(b[at + 1]);
}

std::uint32_t be32(std::string_view b, std::size_t at) {
  return (be16(b, at) << 16) | be16(b, at + 2);
}

std::int32_t le32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int k = 3; k >= 0; --k) v = (v << 8) | static_cast<std::uint8_t>(b[at + k]);
  return static_cast<std::int32_t>(v);
}

std::string lower_ext(const std::filesystem::path& p) {
  auto e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e;
}

std::optional<ImageSize> sniff_jpeg(std::string_view b) {
  std::size_t pos = 2;
  while (pos + 9 < b.size()) {
    if (static_cast<std::uint8_t>(b[pos]) != 0xFF) return std::nullopt;
    const auto marker = static_cast<std::uint8_t>(b[pos + 1]);
    if (marker == 0xFF) {
      ++pos;
      continue;
    }
    const bool sof = marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 && marker != 0xC8 &&
                     marker != 0xCC;
    if (sof) {
      return ImageSize{static_cast<int>(be16(b, pos + 7)), static_cast<int>(be16(b, pos + 5))};
    }
    pos += 2 + be16(b, pos + 2);
  }
  return std::nullopt;
}

std::optional<ImageSize> sniff_pnm(std::string_view b) {
  std::istringstream in{std::string(b.substr(0, std::min<std::size_t>(b.size(), 512)))};
  std::string magic;
  in >> magic;
  auto next_int = [&]() -> std::optional<int> {
    for (;;) {
      in >> std::ws;
      if (in.peek() == '#') {
        std::string skip;
        std::getline(in, skip);
        continue;
      }
      int v = 0;
      if (in >> v) return v;
      return std::nullopt;
    }
  };
  const auto w = next_int();
  const auto h = next_int();
  if (!w || !h) return std::nullopt;
  return ImageSize{*w, *h};
}

}  // namespace

std::optional<ImageSize> sniff_image_size(std::string_view b) {
  if (b.size() >= 24 && b.substr(0, 8) == std::string_view("\x89PNG\r\n\x1a\n", 8)) {
    return ImageSize{static_cast<int>(be32(b, 16)), static_cast<int>(be32(b, 20))};
  }
  if (b.size() >= 4 && static_cast<std::uint8_t>(b[0]) == 0xFF &&
      static_cast<std::uint8_t>(b[1]) == 0xD8) {
    return sniff_jpeg(b);
  }
  if (b.size() >= 26 && b[0] == 'B' && b[1] == 'M') {
    const auto h = le32(b, 22);
    return ImageSize{le32(b, 18), h < 0 ? -h : h};
  }
  if (b.size() >= 2 && b[0] == 'P' && b[1] >= '1' && b[1] <= '6') return sniff_pnm(b);
  return std::nullopt;
}

std::optional<ImageSize> read_image_size(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string head(64 * 1024, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in.gcount()));
  return sniff_image_size(head);
}

std::string content_type_for(const std::filesystem::path& path) {
  const auto e = lower_ext(path);
  if (e == ".png") return "image/png";
  if (e == ".jpg" || e == ".jpeg") return "image/jpeg";
  if (e == ".bmp") return "image/bmp";
  if (e == ".pgm" || e == ".ppm" || e == ".pnm") return "image/x-portable-anymap";
  return "application/octet-stream";
}

bool has_image_extension(const std::filesystem::path& path) {
  const auto e = lower_ext(path);
  return e == ".png" || e == ".jpg" || e == ".jpeg" || e == ".bmp" || e == ".pgm" ||
         e == ".ppm" || e == ".pnm";
}

}  // namespace doorkit::io
