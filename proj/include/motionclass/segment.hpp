#pragma once

#include <vector>

#include "motionclass/geometry.hpp"
#include "motionclass/image.hpp"

namespace motionclass {

struct SegmentParams {
  int components = 4;            // K
  double alpha = 0.02;           // learning rate
  double lambda = 2.5;           // match threshold in standard deviations
  double background_ratio = 0.8; // T
  double var_min = 4.0;
  double var_max = 75.0;
  double var_init = 15.0;

  bool operator==(const SegmentParams&) const = default;
};

/// Per-pixel adaptive mixture of Gaussians over intensity.
///
/// Components are kept sorted by weight. A pixel is background when it matches (within lambda
/// standard deviations) a component whose preceding components hold less than T of the weight.
/// Unmatched pixels replace the weakest component and are foreground.
class BackgroundModel {
 public:
  BackgroundModel(int width, int height, SegmentParams params = {});

  /// Throws std::invalid_argument when the frame size differs from the model.
  Mask update_and_classify(const GrayImage& frame);

  int width() const { return width_; }
  int height() const { return height_; }
  int frames_seen() const { return frames_; }
  double weight_sum(int x, int y) const;
  double min_variance() const;
  int component_count(int x, int y) const { return count_[index(x, y)]; }

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  SegmentParams params_;
  int frames_ = 0;
  std::vector<float> mean_;
  std::vector<float> var_;
  std::vector<float> weight_;
  std::vector<std::uint8_t> count_;
};

/// Foreground restricted to the pixels whose centres fall inside `box`.
Mask instance_mask(const Mask& fg, const BoundingBox& box);

}  // namespace motionclass
