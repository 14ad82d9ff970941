#pragma once

#include <vector>

#include <Eigen/Core>

#include "motionclass/flow.hpp"
#include "motionclass/geometry.hpp"

namespace motionclass {

struct MotionSplit {
  std::vector<FlowPoint> static_points;
  std::vector<FlowPoint> dynamic_points;
  std::vector<FlowPoint> ambiguous_points;
};

struct ObstacleDetection {
  std::vector<FlowPoint> members;
  BoundingBox box;  // tight hull of member positions
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // mean member flow
};

struct MotionParams {
  double tau_static = 0.5;
  double tau_dynamic = 2.0;
  double eps = 15.0;
  int min_pts = 3;
  double velocity_weight = 5.0;

  bool operator==(const MotionParams&) const = default;
};

/// |flow| <= tau_static is static, |flow| >= tau_dynamic is dynamic, anything between is ambiguous.
/// Throws std::invalid_argument unless 0 <= tau_static < tau_dynamic.
MotionSplit split_motion(const std::vector<FlowPoint>& points, double tau_static, double tau_dynamic);

/// Label of each row under DBSCAN; -1 marks noise. Clusters are numbered in the order they are
/// expanded, visiting seeds by ascending row index, so a border point joins the first cluster reaching it.
std::vector<int> dbscan(const Eigen::MatrixXd& features, double eps, int min_pts);

/// DBSCAN over (x, y, w*vx, w*vy); one detection per cluster, noise discarded.
std::vector<ObstacleDetection> cluster_dynamic(const std::vector<FlowPoint>& points, double eps, int min_pts,
                                               double velocity_weight);

}  // namespace motionclass
