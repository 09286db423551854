#include "rcgcat/image.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "rcgcat/error.hpp"

namespace rcgcat {

namespace {

// Skips PPM whitespace and '#' comments, then reads one unsigned decimal token.
long next_header_int(const std::string& bytes, std::size_t& pos, const std::string& origin) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
    throw DataError(origin + ": malformed header");
  long value = 0;
  while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
    value = value * 10 + (bytes[pos] - '0');
    if (value > 1'000'000'000L) throw DataError(origin + ": malformed header");
    ++pos;
  }
  return value;
}

}  // namespace

Image make_image(int width, int height, Rgb fill) {
  if (width < 1 || height < 1) throw DataError("image dimensions must be positive");
  Image img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

Image decode_ppm(const std::string& bytes, const std::string& origin) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '3' && bytes[1] != '6'))
    throw DataError(origin + ": unsupported format (expected P3/P6 PPM)");
  const bool binary = bytes[1] == '6';
  std::size_t pos = 2;
  const long width = next_header_int(bytes, pos, origin);
  const long height = next_header_int(bytes, pos, origin);
  const long maxval = next_header_int(bytes, pos, origin);
  if (width < 1 || height < 1) throw DataError(origin + ": malformed header");
  if (maxval != 255) throw DataError(origin + ": unsupported maxval " + std::to_string(maxval));

  Image img = make_image(static_cast<int>(width), static_cast<int>(height));
  const std::size_t n = img.pixels.size() * 3;
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
      throw DataError(origin + ": malformed header");
    ++pos;
    if (bytes.size() - pos < n) throw DataError(origin + ": truncated pixel data");
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      img.pixels[i].r = static_cast<std::uint8_t>(bytes[pos + 3 * i]);
      img.pixels[i].g = static_cast<std::uint8_t>(bytes[pos + 3 * i + 1]);
      img.pixels[i].b = static_cast<std::uint8_t>(bytes[pos + 3 * i + 2]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = next_header_int(bytes, pos, origin);
      if (v > 255) throw DataError(origin + ": sample out of range");
      auto& px = img.pixels[i / 3];
      const auto c = static_cast<std::uint8_t>(v);
      if (i % 3 == 0)
        px.r = c;
      else if (i % 3 == 1)
        px.g = c;
      else
        px.b = c;
    }
  }
  return img;
}

Image load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("unreadable file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_ppm(buf.str(), path.string());
}

std::string encode_ppm(const Image& image) {
  require_invariant(image.pixels.size() ==
                        static_cast<std::size_t>(image.width) * image.height,
                    "pixel count mismatch");
  std::string out = "P6\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.reserve(out.size() + image.pixels.size() * 3);
  for (const Rgb& px : image.pixels) {
    out.push_back(static_cast<char>(px.r));
    out.push_back(static_cast<char>(px.g));
    out.push_back(static_cast<char>(px.b));
  }
  return out;
}

void write_ppm(const Image& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  const std::string bytes = encode_ppm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("short write: " + path.string());
}

}  // namespace rcgcat
