#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace rcgcat {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend auto operator<=>(const Rgb&, const Rgb&) = default;
};

// Row-major 8-bit RGB raster.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  const Rgb& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const Image&, const Image&) = default;
};

Image make_image(int width, int height, Rgb fill = {});

// P3/P6, maxval 255 only. Decoding is bit-exact.
Image load_image(const std::filesystem::path& path);
Image decode_ppm(const std::string& bytes, const std::string& origin = "<memory>");

std::string encode_ppm(const Image& image);  // binary P6
void write_ppm(const Image& image, const std::filesystem::path& path);

}  // namespace rcgcat
