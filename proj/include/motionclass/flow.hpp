#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "motionclass/image.hpp"

namespace motionclass {

struct InterestPoint {
  Eigen::Vector2d position;  // pixel-centre coordinates
  double response = 0.0;
  Eigen::VectorXf descriptor;  // zero-mean, unit-norm intensity patch; all zeros on flat patches
};

struct FlowPoint {
  Eigen::Vector2d position;  // in the current frame
  Eigen::Vector2d flow;      // current minus previous position, px/frame
  double match_score = 0.0;
};

struct FlowParams {
  int max_points = 800;
  int descriptor_side = 9;
  int window_radius = 2;     // structure-tensor window is (2r+1)^2
  int nms_radius = 2;
  double quality_level = 0.001;  // relative to the strongest response in the frame
  double min_response = 25.0;    // absolute floor, (intensity/px)^2 units
  double search_radius = 20.0;
  double score_min = 0.8;

  bool operator==(const FlowParams&) const = default;
};

/// Shi-Tomasi minimum-eigenvalue response of the gradient structure tensor.
GrayImage corner_response(const GrayImage& gray, int window_radius);

/// Corners after non-maximum suppression, strongest first, at most `max_points`.
std::vector<InterestPoint> detect_points(const GrayImage& gray, int max_points, const FlowParams& params = {});

/// One-to-one matching by normalised cross-correlation, greedy on score.
/// Ties resolve toward the lower current index, then the lower previous index.
std::vector<FlowPoint> match_flow(const std::vector<InterestPoint>& prev, const std::vector<InterestPoint>& curr,
                                  double search_radius, double score_min);

/// CSV with header `x,y,dx,dy,score`.
void write_flow_csv(const std::filesystem::path& path, const std::vector<FlowPoint>& points);

}  // namespace motionclass
