#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace motionclass {

/// Axis-aligned box in continuous pixel coordinates; pixel (x, y) spans [x, x+1) x [y, y+1).
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return std::max(0.0, width()) * std::max(0.0, height()); }
  Eigen::Vector2d center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
  bool valid() const { return x_min <= x_max && y_min <= y_max; }

  BoundingBox expanded(double margin) const {
    return {x_min - margin, y_min - margin, x_max + margin, y_max + margin};
  }

  bool operator==(const BoundingBox&) const = default;
};

inline BoundingBox box_from_center(const Eigen::Vector2d& c, double w, double h) {
  return {c.x() - 0.5 * w, c.y() - 0.5 * h, c.x() + 0.5 * w, c.y() + 0.5 * h};
}

/// Intersection over union; 0 for disjoint or degenerate pairs.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace motionclass
