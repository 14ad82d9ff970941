#include "motionclass/segment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace motionclass {

BackgroundModel::BackgroundModel(int width, int height, SegmentParams params)
    : width_(width), height_(height), params_(params) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("segment: model size must be positive");
  if (params_.components < 1 || params_.components > 255) throw std::invalid_argument("segment: components in [1,255]");
  const auto n = static_cast<std::size_t>(width) * height * params_.components;
  mean_.assign(n, 0.0f);
  var_.assign(n, 0.0f);
  weight_.assign(n, 0.0f);
  count_.assign(static_cast<std::size_t>(width) * height, 0);
}

Mask BackgroundModel::update_and_classify(const GrayImage& frame) {
  if (frame.cols() != width_ || frame.rows() != height_) {
    throw std::invalid_argument("segment: frame " + std::to_string(frame.cols()) + "x" + std::to_string(frame.rows()) +
                                " does not match model " + std::to_string(width_) + "x" + std::to_string(height_));
  }
  const int k_max = params_.components;
  const auto alpha = static_cast<float>(params_.alpha);
  const auto lambda2 = static_cast<float>(params_.lambda * params_.lambda);
  const auto ratio = static_cast<float>(params_.background_ratio);
  const auto var_min = static_cast<float>(params_.var_min);
  const auto var_max = static_cast<float>(params_.var_max);
  const auto var_init = static_cast<float>(params_.var_init);

  Mask fg = Mask::Constant(height_, width_, false);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const std::size_t pix = index(x, y);
      float* mean = &mean_[pix * k_max];
      float* var = &var_[pix * k_max];
      float* weight = &weight_[pix * k_max];
      int count = count_[pix];
      const float value = frame(y, x);

      if (count == 0) {
        mean[0] = value;
        var[0] = var_init;
        weight[0] = 1.0f;
        count_[pix] = 1;
        continue;
      }

      int matched = -1;
      float cumulative = 0.0f;
      bool background = false;
      for (int k = 0; k < count; ++k) {
        const float diff = value - mean[k];
        if (diff * diff < lambda2 * var[k]) {
          matched = k;
          background = cumulative < ratio;
          break;
        }
        cumulative += weight[k];
      }

      int moved;
      if (matched >= 0) {
        for (int k = 0; k < count; ++k) weight[k] *= (1.0f - alpha);
        weight[matched] += alpha;
        const float rho = std::min(1.0f, alpha / weight[matched]);
        const float diff = value - mean[matched];
        mean[matched] += rho * diff;
        var[matched] = std::clamp(var[matched] + rho * (diff * diff - var[matched]), var_min, var_max);
        moved = matched;
      } else {
        for (int k = 0; k < count; ++k) weight[k] *= (1.0f - alpha);
        if (count < k_max) ++count;
        moved = count - 1;
        mean[moved] = value;
        var[moved] = var_init;
        weight[moved] = alpha;
        fg(y, x) = true;
      }
      float total = 0.0f;
      for (int k = 0; k < count; ++k) total += weight[k];
      for (int k = 0; k < count; ++k) weight[k] /= total;
      // Restore descending weight order.
      for (int k = moved; k > 0 && weight[k] > weight[k - 1]; --k) {
        std::swap(weight[k], weight[k - 1]);
        std::swap(mean[k], mean[k - 1]);
        std::swap(var[k], var[k - 1]);
      }
      count_[pix] = static_cast<std::uint8_t>(count);
      if (matched >= 0 && !background) fg(y, x) = true;
    }
  }
  ++frames_;
  return fg;
}

double BackgroundModel::weight_sum(int x, int y) const {
  const std::size_t pix = index(x, y);
  double total = 0.0;
  for (int k = 0; k < count_[pix]; ++k) total += weight_[pix * params_.components + k];
  return total;
}

double BackgroundModel::min_variance() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t pix = 0; pix < count_.size(); ++pix)
    for (int k = 0; k < count_[pix]; ++k) lo = std::min<double>(lo, var_[pix * params_.components + k]);
  return lo;
}

Mask instance_mask(const Mask& fg, const BoundingBox& box) {
  Mask out = Mask::Constant(fg.rows(), fg.cols(), false);
  const auto x0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(box.x_min - 0.5)));
  const auto y0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(box.y_min - 0.5)));
  const auto x1 = std::min<Eigen::Index>(fg.cols(), static_cast<Eigen::Index>(std::ceil(box.x_max - 0.5)));
  const auto y1 = std::min<Eigen::Index>(fg.rows(), static_cast<Eigen::Index>(std::ceil(box.y_max - 0.5)));
  if (x1 > x0 && y1 > y0) out.block(y0, x0, y1 - y0, x1 - x0) = fg.block(y0, x0, y1 - y0, x1 - x0);
  return out;
}

}  // namespace motionclass
