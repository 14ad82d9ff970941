#pragma once

#include <filesystem>

#include "motionclass/image.hpp"

namespace motionclass {

/// Reads any PNG as 8-bit RGB. Throws std::runtime_error on missing or corrupt files.
RgbImage read_png(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const RgbImage& image);

/// Writes a mask as an 8-bit grayscale PNG (0 / 255).
void write_mask_png(const std::filesystem::path& path, const Mask& mask);
Mask read_mask_png(const std::filesystem::path& path);

}  // namespace motionclass
