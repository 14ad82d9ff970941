#pragma once

#include <vector>

#include <Eigen/Core>

#include "motionclass/geometry.hpp"

namespace motionclass {

struct KalmanParams {
  double p_init = 10.0;           // initial state variance
  double p_velocity_scale = 1000.0;  // extra factor on initial velocity variance
  double q_position = 1.0;        // process noise on (cx, cy, area, aspect)
  double q_velocity = 0.01;       // process noise on (vcx, vcy)
  double q_area_velocity = 1e-4;  // process noise on varea
  double r_position = 1.0;        // measurement noise on (cx, cy)
  double r_shape = 10.0;          // measurement noise on (area, aspect)

  bool operator==(const KalmanParams&) const = default;
};

/// Constant-velocity filter on (cx, cy, area, aspect, vcx, vcy, varea); aspect is static.
class KalmanBoxFilter {
 public:
  using State = Eigen::Matrix<double, 7, 1>;
  using Covariance = Eigen::Matrix<double, 7, 7>;

  KalmanBoxFilter(const BoundingBox& box, const KalmanParams& params);

  void predict();
  void update(const BoundingBox& box);

  BoundingBox box() const;
  const State& state() const { return x_; }
  const Covariance& covariance() const { return p_; }

  static Eigen::Vector4d measurement(const BoundingBox& box);
  static BoundingBox to_box(const State& x);

 private:
  State x_;
  Covariance p_;
  Covariance f_;
  Covariance q_;
  Eigen::Matrix4d r_;
  Eigen::Matrix<double, 4, 7> h_;
};

struct TrackRecord {
  int frame = 0;
  BoundingBox box;
  bool colliding = false;
};

struct Track {
  int id = 0;
  KalmanBoxFilter filter;
  int hits = 0;    // consecutive matched frames
  int misses = 0;  // consecutive unmatched frames
  bool confirmed = false;
  bool ever_confirmed = false;
  bool colliding = false;
  bool matched = false;  // updated in the latest step
  std::vector<TrackRecord> history;  // matched frames only, strictly increasing
};

struct TrackerParams {
  double iou_min = 0.3;
  int max_age = 3;
  int min_hits = 3;
  double collision_eps = 0.05;
  KalmanParams kalman;

  bool operator==(const TrackerParams&) const = default;
};

/// Snapshot of one live track after a step.
struct TrackState {
  int id = 0;
  BoundingBox box;
  bool matched = false;
  bool confirmed = false;
  bool colliding = false;
};

struct TrackerStep {
  std::vector<TrackState> tracks;
  std::vector<Track> retired;  // tracks deleted during this step
};

/// Tracking-by-detection: predict, IOU/Hungarian association, lifecycle, collision flags.
class Tracker {
 public:
  explicit Tracker(TrackerParams params = {});

  /// Frames must be strictly increasing; throws std::invalid_argument otherwise.
  TrackerStep step(const std::vector<BoundingBox>& detections, int frame);

  /// Hands over every remaining track, ending the run.
  std::vector<Track> finish();

  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerParams& params() const { return params_; }

 private:
  TrackerParams params_;
  std::vector<Track> tracks_;
  int next_id_ = 1;
  int last_frame_;
  bool started_ = false;
};

}  // namespace motionclass
