#include "motionclass/motion.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

namespace motionclass {

MotionSplit split_motion(const std::vector<FlowPoint>& points, double tau_static, double tau_dynamic) {
  if (!(tau_static >= 0.0 && tau_static < tau_dynamic)) {
    throw std::invalid_argument("motion: require 0 <= tau_static < tau_dynamic");
  }
  MotionSplit split;
  for (const auto& p : points) {
    const double speed = p.flow.norm();
    if (speed <= tau_static) {
      split.static_points.push_back(p);
    } else if (speed >= tau_dynamic) {
      split.dynamic_points.push_back(p);
    } else {
      split.ambiguous_points.push_back(p);
    }
  }
  return split;
}

std::vector<int> dbscan(const Eigen::MatrixXd& features, double eps, int min_pts) {
  if (!(eps > 0.0) || min_pts < 1) throw std::invalid_argument("dbscan: require eps > 0 and min_pts >= 1");
  const auto n = features.rows();
  const double eps2 = eps * eps;
  auto neighbours = [&](Eigen::Index i) {
    std::vector<Eigen::Index> out;
    for (Eigen::Index j = 0; j < n; ++j) {
      if ((features.row(i) - features.row(j)).squaredNorm() <= eps2) out.push_back(j);
    }
    return out;
  };

  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  std::vector<int> label(n, kUnvisited);
  int cluster = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) continue;
    auto seeds = neighbours(i);
    if (static_cast<int>(seeds.size()) < min_pts) {
      label[i] = kNoise;
      continue;
    }
    label[i] = cluster;
    std::deque<Eigen::Index> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      const auto j = queue.front();
      queue.pop_front();
      if (label[j] == kNoise) label[j] = cluster;  // border point
      if (label[j] != kUnvisited) continue;
      label[j] = cluster;
      auto more = neighbours(j);
      if (static_cast<int>(more.size()) >= min_pts) queue.insert(queue.end(), more.begin(), more.end());
    }
    ++cluster;
  }
  return label;
}

std::vector<ObstacleDetection> cluster_dynamic(const std::vector<FlowPoint>& points, double eps, int min_pts,
                                               double velocity_weight) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd features(n, 4);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = points[i];
    features.row(i) << p.position.x(), p.position.y(), velocity_weight * p.flow.x(), velocity_weight * p.flow.y();
  }
  const auto labels = dbscan(features, eps, min_pts);
  int clusters = 0;
  for (int l : labels) clusters = std::max(clusters, l + 1);

  std::vector<ObstacleDetection> out(clusters);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (labels[i] >= 0) out[labels[i]].members.push_back(points[i]);
  }
  for (auto& d : out) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    d.box = {inf, inf, -inf, -inf};
    for (const auto& m : d.members) {
      d.box.x_min = std::min(d.box.x_min, m.position.x());
      d.box.y_min = std::min(d.box.y_min, m.position.y());
      d.box.x_max = std::max(d.box.x_max, m.position.x());
      d.box.y_max = std::max(d.box.y_max, m.position.y());
      d.velocity += m.flow;
    }
    d.velocity /= static_cast<double>(d.members.size());
  }
  return out;
}

}  // namespace motionclass
