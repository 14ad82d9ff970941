#include "motionclass/overlay.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace motionclass {
namespace {

constexpr std::array<Rgb, 8> kPalette{{{230, 25, 75},
                                       {60, 180, 75},
                                       {0, 130, 200},
                                       {245, 130, 48},
                                       {145, 30, 180},
                                       {70, 240, 240},
                                       {240, 50, 230},
                                       {210, 245, 60}}};

// Rows top to bottom, 5 bits each, MSB = leftmost column.
using Glyph = std::array<std::uint8_t, 7>;

const std::map<char, Glyph>& font() {
  static const std::map<char, Glyph> glyphs{
      {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}}, {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}}, {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
      {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}}, {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
      {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}}, {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
      {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}}, {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
      {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}}, {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
      {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}}, {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
      {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}}, {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
      {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}}, {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
      {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}}, {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
      {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}}, {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
      {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}}, {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
      {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
      {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}}, {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
      {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}}, {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
      {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
      {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}}, {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
      {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}}, {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
      {'a', {0x00, 0x00, 0x0E, 0x01, 0x0F, 0x11, 0x0F}}, {'c', {0x00, 0x00, 0x0E, 0x10, 0x10, 0x11, 0x0E}},
      {'e', {0x00, 0x00, 0x0E, 0x11, 0x1F, 0x10, 0x0E}}, {'l', {0x0C, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'r', {0x00, 0x00, 0x16, 0x19, 0x10, 0x10, 0x10}}, {'s', {0x00, 0x00, 0x0E, 0x10, 0x0E, 0x01, 0x1E}},
      {'t', {0x08, 0x08, 0x1C, 0x08, 0x08, 0x09, 0x06}}, {'u', {0x00, 0x00, 0x11, 0x11, 0x11, 0x13, 0x0D}},
  };
  return glyphs;
}

void put(RgbImage& image, int x, int y, const Rgb& c) {
  if (x < 0 || y < 0 || x >= image.width || y >= image.height) return;
  for (int ch = 0; ch < 3; ++ch) image.at(x, y, ch) = c[ch];
}

}  // namespace

Rgb cluster_color(int cluster) {
  const auto n = static_cast<int>(kPalette.size());
  return kPalette[((cluster % n) + n) % n];
}

void draw_box(RgbImage& image, const BoundingBox& box, const Rgb& color, int thickness) {
  const int x0 = static_cast<int>(std::floor(box.x_min));
  const int y0 = static_cast<int>(std::floor(box.y_min));
  const int x1 = static_cast<int>(std::ceil(box.x_max)) - 1;
  const int y1 = static_cast<int>(std::ceil(box.y_max)) - 1;
  for (int t = 0; t < thickness; ++t) {
    for (int x = x0; x <= x1; ++x) {
      put(image, x, y0 + t, color);
      put(image, x, y1 - t, color);
    }
    for (int y = y0; y <= y1; ++y) {
      put(image, x0 + t, y, color);
      put(image, x1 - t, y, color);
    }
  }
}

void tint_mask(RgbImage& image, const Mask& mask, const BoundingBox& box, const Rgb& color, double opacity) {
  const int x0 = static_cast<int>(std::floor(box.x_min));
  const int y0 = static_cast<int>(std::floor(box.y_min));
  for (Eigen::Index r = 0; r < mask.rows(); ++r) {
    for (Eigen::Index c = 0; c < mask.cols(); ++c) {
      if (!mask(r, c)) continue;
      const int x = x0 + static_cast<int>(c);
      const int y = y0 + static_cast<int>(r);
      if (x < 0 || y < 0 || x >= image.width || y >= image.height) continue;
      for (int ch = 0; ch < 3; ++ch) {
        const double v = (1.0 - opacity) * image.at(x, y, ch) + opacity * color[ch];
        image.at(x, y, ch) = static_cast<std::uint8_t>(std::lround(v));
      }
    }
  }
}

Mask crop_to_box(const Mask& full, const BoundingBox& box) {
  const int x0 = static_cast<int>(std::floor(box.x_min));
  const int y0 = static_cast<int>(std::floor(box.y_min));
  const int w = std::max(0, static_cast<int>(std::ceil(box.x_max)) - x0);
  const int h = std::max(0, static_cast<int>(std::ceil(box.y_max)) - y0);
  Mask out = Mask::Constant(h, w, false);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      const int x = x0 + c, y = y0 + r;
      if (x >= 0 && y >= 0 && x < full.cols() && y < full.rows()) out(r, c) = full(y, x);
    }
  return out;
}

int draw_text(RgbImage& image, int x, int y, const std::string& text, const Rgb& color, int scale) {
  int cursor = x;
  for (char ch : text) {
    auto it = font().find(ch);
    if (it == font().end()) it = font().find(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (it != font().end()) {
      for (int row = 0; row < 7; ++row)
        for (int col = 0; col < 5; ++col)
          if (it->second[row] & (0x10 >> col))
            for (int sy = 0; sy < scale; ++sy)
              for (int sx = 0; sx < scale; ++sx) put(image, cursor + col * scale + sx, y + row * scale + sy, color);
    }
    cursor += 6 * scale;
  }
  return cursor - x;
}

RgbImage render_overlay(const RgbImage& frame, const std::vector<OverlayItem>& items) {
  RgbImage out = frame;
  for (const auto& item : items) {
    const Rgb color = item.cluster >= 0 ? cluster_color(item.cluster) : Rgb{255, 255, 255};
    if (item.mask.size() > 0) tint_mask(out, item.mask, item.box, color);
    draw_box(out, item.box, color);
    if (item.cluster >= 0) {
      const int y = std::max(0, static_cast<int>(std::floor(item.box.y_min)) - 9);
      draw_text(out, static_cast<int>(std::floor(item.box.x_min)), y, "Cluster " + std::to_string(item.cluster), color);
    }
  }
  return out;
}

}  // namespace motionclass
