#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace palm {

// 8-bit grayscale image, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// Binary PGM (P5, maxval 255). Header comments ('#') are accepted.
// Throws IoError on unreadable files, unsupported magic (including ASCII P2),
// maxval other than 255 and truncated payloads.
GrayImage load_image(const std::filesystem::path& path);

// Writes "P5\n<w> <h>\n255\n" followed by the raw bytes.
void write_image(const std::filesystem::path& path, const GrayImage& image);

}  // namespace palm
