#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace motionclass {

/// Row-major 2-D plane; row = y, column = x.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Intensity plane on the 0..255 scale.
using GrayImage = Plane<float>;
using Mask = Plane<bool>;

/// Interleaved 8-bit RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, fill) {}

  bool empty() const { return width == 0 || height == 0; }

  std::uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }

  bool operator==(const RgbImage&) const = default;
};

inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

/// Luma conversion with fixed (0.299, 0.587, 0.114) weights. Exact on r == g == b input.
inline GrayImage to_gray(const RgbImage& rgb) {
  GrayImage gray(rgb.height, rgb.width);
  for (int y = 0; y < rgb.height; ++y) {
    for (int x = 0; x < rgb.width; ++x) {
      const double v = kLumaR * rgb.at(x, y, 0) + kLumaG * rgb.at(x, y, 1) + kLumaB * rgb.at(x, y, 2);
      gray(y, x) = static_cast<float>(v);
    }
  }
  return gray;
}

/// Bilinear sample with edge clamping; (x, y) in pixel-center coordinates.
template <typename Scalar>
Scalar sample_bilinear(const Plane<Scalar>& img, double x, double y) {
  const auto w = img.cols();
  const auto h = img.rows();
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const auto x0 = static_cast<Eigen::Index>(x);
  const auto y0 = static_cast<Eigen::Index>(y);
  const auto x1 = std::min<Eigen::Index>(x0 + 1, w - 1);
  const auto y1 = std::min<Eigen::Index>(y0 + 1, h - 1);
  const double fx = x - static_cast<double>(x0);
  const double fy = y - static_cast<double>(y0);
  const double top = (1.0 - fx) * img(y0, x0) + fx * img(y0, x1);
  const double bottom = (1.0 - fx) * img(y1, x0) + fx * img(y1, x1);
  return static_cast<Scalar>((1.0 - fy) * top + fy * bottom);
}

}  // namespace motionclass
