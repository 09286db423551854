#include "rcgcat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rcgcat/error.hpp"
#include "rcgcat/rng.hpp"

namespace fs = std::filesystem;

namespace rcgcat {

namespace {

constexpr double kPi = 3.14159265358979323846;

void fill_rect(Image& img, int x0, int y0, int x1, int y1, Rgb color) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width);
  y1 = std::min(y1, img.height);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) img.at(x, y) = color;
}

void fill_disk(Image& img, double cx, double cy, double radius, Rgb color) {
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius)) - 1);
  const int x1 = std::min(img.width, static_cast<int>(std::ceil(cx + radius)) + 1);
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius)) - 1);
  const int y1 = std::min(img.height, static_cast<int>(std::ceil(cy + radius)) + 1);
  const double r2 = radius * radius;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r2) img.at(x, y) = color;
    }
}

void render_single_square(Image& img, Rng& rng) {
  const int w = img.width, h = img.height;
  fill_rect(img, 0, 0, w, h, Rgb{28, 58, 108});
  const int side = w * 3 / 10 + rng.next_int(0, w / 10);
  const int jx = rng.next_int(-w / 16, w / 16);
  const int jy = rng.next_int(-h / 16, h / 16);
  const int x0 = (w - side) / 2 + jx;
  const int y0 = (h - side) / 2 + jy;
  fill_rect(img, x0, y0, x0 + side, y0 + side, Rgb{232, 148, 36});
}

// 3x3 squares on a dark background; the background is the only mutual
// neighbor, so the RCG is a 9-leaf star.
void render_square_grid(Image& img, Rng& rng) {
  static const Rgb palette[5] = {
      {214, 69, 51}, {241, 196, 64}, {88, 166, 74}, {66, 134, 214}, {156, 89, 182}};
  const int w = img.width, h = img.height;
  fill_rect(img, 0, 0, w, h, Rgb{24, 32, 44});
  const int margin = w / 16;
  const int pitch_x = (w - 2 * margin) / 3;
  const int pitch_y = (h - 2 * margin) / 3;
  const int color_shift = rng.next_int(0, 4);
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col) {
      const int side = pitch_x * 6 / 10 + rng.next_int(0, pitch_x / 8);
      const int cx = margin + col * pitch_x + pitch_x / 2 + rng.next_int(-pitch_x / 12, pitch_x / 12);
      const int cy = margin + row * pitch_y + pitch_y / 2 + rng.next_int(-pitch_y / 12, pitch_y / 12);
      const Rgb color = palette[(row * 3 + col + color_shift) % 5];
      fill_rect(img, cx - side / 2, cy - side / 2, cx - side / 2 + side, cy - side / 2 + side, color);
    }
}

// Six disks on a ring, overlapping in pairs (three two-disk chains), plus a
// two-tone bullseye in the middle. Pairs inject cycles into the RCG.
void render_blob_ring(Image& img, Rng& rng) {
  static const Rgb blob_colors[3][2] = {
      {{210, 180, 60}, {90, 70, 160}},
      {{60, 150, 160}, {210, 180, 60}},
      {{90, 70, 160}, {60, 150, 160}}};
  const int w = img.width, h = img.height;
  fill_rect(img, 0, 0, w, h, Rgb{20, 40, 30});
  const double cx = w / 2.0, cy = h / 2.0;
  const double ring = w * (0.30 + 0.04 * rng.next_double());
  const double r = w * 0.085;
  const double phase = (rng.next_double() - 0.5) * kPi / 9;
  for (int pair = 0; pair < 3; ++pair) {
    const double base = phase + pair * 2 * kPi / 3;
    // Two disks of the pair overlap: centers 1.5 radii apart.
    for (int half = 0; half < 2; ++half) {
      const double angle = base + (half ? 0.75 : -0.75) * r / ring;
      fill_disk(img, cx + ring * std::cos(angle), cy + ring * std::sin(angle), r,
                blob_colors[pair][half]);
    }
  }
  const double core = w * (0.065 + 0.02 * rng.next_double());
  fill_disk(img, cx, cy, core, Rgb{200, 200, 210});
  fill_disk(img, cx, cy, core * 0.55, Rgb{140, 40, 40});
}

// Horizontal bands cycling through six colors; the RCG is a path.
void render_stripes(Image& img, Rng& rng) {
  static const Rgb palette[6] = {{230, 220, 200}, {40, 60, 90},  {170, 90, 50},
                                 {90, 130, 70},   {120, 60, 40}, {200, 170, 90}};
  const int w = img.width, h = img.height;
  const int bands = 8;
  const int color_shift = rng.next_int(0, 5);
  int y = 0;
  for (int band = 0; band < bands && y < h; ++band) {
    int y_end = (band == bands - 1) ? h : (band + 1) * h / bands + rng.next_int(-1, 1);
    y_end = std::clamp(y_end, y + 1, h);
    fill_rect(img, 0, y, w, y_end, palette[(band + color_shift) % 6]);
    y = y_end;
  }
}

void add_noise(Image& img, double noise, Rng& rng) {
  if (noise <= 0) return;
  const int amp = static_cast<int>(std::lround(noise * 255));
  if (amp == 0) return;
  auto jitter = [&](std::uint8_t c) {
    const int v = static_cast<int>(c) + rng.next_int(-amp, amp);
    return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  };
  for (Rgb& px : img.pixels) {
    px.r = jitter(px.r);
    px.g = jitter(px.g);
    px.b = jitter(px.b);
  }
}

}  // namespace

SynthConfig default_synth_config() {
  SynthConfig cfg;
  cfg.classes = {{"grid", "square_grid"}, {"ring", "blob_ring"}, {"stripes", "stripes"}};
  return cfg;
}

Image render_motif(const std::string& motif, int width, int height, double noise,
                   std::uint64_t seed) {
  if (width < 8 || height < 8) throw DataError("synth images must be at least 8x8");
  Image img = make_image(width, height);
  Rng rng(seed);
  if (motif == "single_square")
    render_single_square(img, rng);
  else if (motif == "square_grid")
    render_square_grid(img, rng);
  else if (motif == "blob_ring")
    render_blob_ring(img, rng);
  else if (motif == "stripes")
    render_stripes(img, rng);
  else
    throw DataError("unknown motif: " + motif);
  add_noise(img, noise, rng);
  return img;
}

Dataset synth_dataset(const SynthConfig& config, const fs::path& out_root) {
  if (config.classes.empty()) throw DataError("synth config has zero classes");
  if (config.count_per_class < 1) throw DataError("synth config has zero count per class");
  if (config.noise < 0 || config.noise > 1) throw DataError("synth noise must be in [0,1]");

  fs::create_directories(out_root);
  for (std::size_t c = 0; c < config.classes.size(); ++c) {
    const SynthClassSpec& spec = config.classes[c];
    if (spec.name.empty()) throw DataError("synth class name must be non-empty");
    fs::create_directories(out_root / spec.name);
    for (int i = 0; i < config.count_per_class; ++i) {
      // Per-image seed independent of generation order.
      const std::uint64_t seed = mix_seed(config.seed, c * 1'000'003ULL + static_cast<std::uint64_t>(i));
      const Image img = render_motif(spec.motif, config.width, config.height, config.noise, seed);
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%03d.ppm", spec.name.c_str(), i);
      write_ppm(img, out_root / spec.name / name);
    }
  }
  return scan_dataset(out_root);
}

}  // namespace rcgcat
