#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "motionclass/geometry.hpp"
#include "motionclass/image.hpp"

namespace motionclass {

using Rgb = std::array<std::uint8_t, 3>;

/// Fixed colour per cluster id (cycles after the palette is exhausted).
Rgb cluster_color(int cluster);

void draw_box(RgbImage& image, const BoundingBox& box, const Rgb& color, int thickness = 1);

/// Blends `color` into pixels where the box-local mask is set.
void tint_mask(RgbImage& image, const Mask& mask, const BoundingBox& box, const Rgb& color, double opacity = 0.4);

/// Box-local window of a frame-sized mask, origin at floor(box min); pixels outside the frame are false.
Mask crop_to_box(const Mask& full, const BoundingBox& box);

/// 5x7 bitmap text; supports letters, digits, and space. Returns the drawn width in pixels.
int draw_text(RgbImage& image, int x, int y, const std::string& text, const Rgb& color, int scale = 1);

struct OverlayItem {
  BoundingBox box;
  Mask mask;      // box-local, may be empty
  int cluster = -1;  // -1: no caption
};

/// Frame copy with every item's mask tint, box, and "Cluster k" caption drawn.
RgbImage render_overlay(const RgbImage& frame, const std::vector<OverlayItem>& items);

}  // namespace motionclass
