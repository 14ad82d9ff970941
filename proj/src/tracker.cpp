#include "motionclass/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "motionclass/hungarian.hpp"

namespace motionclass {

KalmanBoxFilter::KalmanBoxFilter(const BoundingBox& box, const KalmanParams& params) {
  f_.setIdentity();
  f_(0, 4) = f_(1, 5) = f_(2, 6) = 1.0;
  h_.setZero();
  h_.leftCols<4>().setIdentity();
  r_ = Eigen::Vector4d(params.r_position, params.r_position, params.r_shape, params.r_shape).asDiagonal();
  q_.setZero();
  q_.diagonal() << params.q_position, params.q_position, params.q_position, params.q_position, params.q_velocity,
      params.q_velocity, params.q_area_velocity;
  p_ = Covariance::Identity() * params.p_init;
  p_.bottomRightCorner<3, 3>() *= params.p_velocity_scale;
  x_.setZero();
  x_.head<4>() = measurement(box);
}

Eigen::Vector4d KalmanBoxFilter::measurement(const BoundingBox& box) {
  const double w = std::max(box.width(), 1e-3);
  const double h = std::max(box.height(), 1e-3);
  const Eigen::Vector2d c = box.center();
  return {c.x(), c.y(), w * h, w / h};
}

BoundingBox KalmanBoxFilter::to_box(const State& x) {
  const double area = std::max(x(2), 1e-6);
  const double aspect = std::max(x(3), 1e-6);
  const double w = std::sqrt(area * aspect);
  const double h = area / w;
  return box_from_center(x.head<2>(), w, h);
}

BoundingBox KalmanBoxFilter::box() const { return to_box(x_); }

void KalmanBoxFilter::predict() {
  if (x_(2) + x_(6) <= 0.0) x_(6) = 0.0;
  x_ = f_ * x_;
  p_ = f_ * p_ * f_.transpose() + q_;
  p_ = 0.5 * (p_ + p_.transpose()).eval();
}

void KalmanBoxFilter::update(const BoundingBox& box) {
  const Eigen::Vector4d z = measurement(box);
  const Eigen::Vector4d innovation = z - h_ * x_;
  const Eigen::Matrix4d s = h_ * p_ * h_.transpose() + r_;
  const Eigen::Matrix<double, 7, 4> k = s.ldlt().solve(h_ * p_).transpose();
  x_ += k * innovation;
  // Joseph form keeps the covariance symmetric positive semi-definite.
  const Covariance i_kh = Covariance::Identity() - k * h_;
  p_ = i_kh * p_ * i_kh.transpose() + k * r_ * k.transpose();
  p_ = 0.5 * (p_ + p_.transpose()).eval();
}

Tracker::Tracker(TrackerParams params) : params_(params), last_frame_(0) {
  if (params_.min_hits < 1 || params_.max_age < 0) throw std::invalid_argument("tracker: min_hits >= 1, max_age >= 0");
}

TrackerStep Tracker::step(const std::vector<BoundingBox>& detections, int frame) {
  if (started_ && frame <= last_frame_) {
    throw std::invalid_argument("tracker: frame " + std::to_string(frame) + " is not after frame " +
                                std::to_string(last_frame_));
  }
  started_ = true;
  last_frame_ = frame;

  for (auto& t : tracks_) t.filter.predict();

  const auto n = static_cast<Eigen::Index>(tracks_.size());
  const auto m = static_cast<Eigen::Index>(detections.size());
  std::vector<int> det_to_track(m, -1);
  std::vector<char> track_matched(n, 0);
  if (n > 0 && m > 0) {
    Eigen::MatrixXd overlap(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
      const BoundingBox predicted = tracks_[i].filter.box();
      for (Eigen::Index j = 0; j < m; ++j) overlap(i, j) = iou(predicted, detections[j]);
    }
    for (auto [i, j] : assign(-overlap)) {
      if (overlap(i, j) < params_.iou_min) continue;
      det_to_track[j] = i;
      track_matched[i] = 1;
    }
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    auto& t = tracks_[i];
    t.matched = track_matched[i] != 0;
    if (!t.matched) {
      ++t.misses;
      t.hits = 0;
    }
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (det_to_track[j] < 0) continue;
    auto& t = tracks_[det_to_track[j]];
    t.filter.update(detections[j]);
    t.misses = 0;
    ++t.hits;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (det_to_track[j] >= 0) continue;
    Track t{next_id_++, KalmanBoxFilter(detections[j], params_.kalman)};
    t.hits = 1;
    t.matched = true;
    tracks_.push_back(std::move(t));
  }

  TrackerStep out;
  std::vector<Track> alive;
  alive.reserve(tracks_.size());
  for (auto& t : tracks_) {
    if (t.misses > params_.max_age) {
      out.retired.push_back(std::move(t));
    } else {
      alive.push_back(std::move(t));
    }
  }
  tracks_ = std::move(alive);

  std::vector<BoundingBox> boxes;
  boxes.reserve(tracks_.size());
  for (auto& t : tracks_) {
    boxes.push_back(t.filter.box());
    t.colliding = false;
    t.confirmed = t.hits >= params_.min_hits;
    t.ever_confirmed = t.ever_confirmed || t.confirmed;
  }
  for (std::size_t a = 0; a < tracks_.size(); ++a) {
    for (std::size_t b = a + 1; b < tracks_.size(); ++b) {
      if (iou(boxes[a], boxes[b]) > params_.collision_eps) tracks_[a].colliding = tracks_[b].colliding = true;
    }
  }
  for (std::size_t a = 0; a < tracks_.size(); ++a) {
    auto& t = tracks_[a];
    if (t.matched) t.history.push_back({frame, boxes[a], t.colliding});
    out.tracks.push_back({t.id, boxes[a], t.matched, t.confirmed, t.colliding});
  }
  return out;
}

std::vector<Track> Tracker::finish() {
  std::vector<Track> out = std::move(tracks_);
  tracks_.clear();
  return out;
}

}  // namespace motionclass
