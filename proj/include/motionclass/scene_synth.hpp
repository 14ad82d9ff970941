#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "motionclass/geometry.hpp"
#include "motionclass/image.hpp"
#include "motionclass/json_util.hpp"

namespace motionclass {

enum class MotionKind { kRigidTranslation, kDeformableOscillation };

/// Box: axis-aligned rectangle of the given aspect. Walker: torso plus two legs; rigid walkers hold the pose
/// at `phase`, deformable walkers swing their legs with `deform_period`.
enum class Silhouette { kBox, kWalker };

struct SpriteSpec {
  int class_id = 0;
  MotionKind motion_kind = MotionKind::kRigidTranslation;
  Silhouette silhouette = Silhouette::kBox;
  int size_px = 16;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // px/frame
  Eigen::Vector2d spawn_center = Eigen::Vector2d::Zero();
  int spawn_frame = 0;
  int lifetime = 1;
  std::uint64_t appearance_seed = 0;
  double aspect = 1.0;            // rigid body width / height
  double deform_period = 12.0;    // frames per silhouette cycle
  double deform_amplitude = 0.6;  // limb swing, radians
  double phase = 0.0;
};

/// Leg swing angle of a walker silhouette at the given age.
double leg_swing(const SpriteSpec& sprite, int age);

/// Multiplicative darkening of the columns [x_begin, x_end).
struct ShadowSpec {
  double x_begin = 0.0;
  double x_end = 0.0;
  double factor = 1.0;
};

struct BackgroundSpec {
  double base = 70.0;
  double texture_amplitude = 14.0;
  int texture_blocks = 40;
  double noise_sigma = 2.0;
  ShadowSpec shadow;
};

struct SyntheticScene {
  int width = 320;
  int height = 240;
  int frame_count = 0;
  double fps = 30.0;
  BackgroundSpec background;
  std::vector<SpriteSpec> sprites;
  std::uint64_t rng_seed = 0;
};

/// One visible sprite in one frame. `mask` is box-local (rows = box height).
struct TruthInstance {
  int instance_id = 0;
  int class_id = 0;
  BoundingBox box;
  Mask mask;
};

struct RenderedFrame {
  RgbImage color;
  std::vector<TruthInstance> truth;
};

struct RenderedScene {
  std::vector<RgbImage> frames;
  std::vector<std::vector<TruthInstance>> truth;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const SyntheticScene& scene);

/// Renders frames on demand. Each frame is a pure function of (scene, frame index).
class SceneRenderer {
 public:
  explicit SceneRenderer(SyntheticScene scene);

  const SyntheticScene& scene() const { return scene_; }
  int frame_count() const { return scene_.frame_count; }
  RenderedFrame frame(int t) const;

 private:
  SyntheticScene scene_;
  Plane<float> background_;  // luma before shadow and noise
};

RenderedScene render(const SyntheticScene& scene);

/// Sprite centre at frame t from constant-velocity kinematics.
Eigen::Vector2d sprite_center(const SpriteSpec& sprite, int t);
bool sprite_alive(const SpriteSpec& sprite, int t);

/// Parameters for the lane-based random scene used by the pipeline and acceptance runs.
struct SceneGeneratorParams {
  int width = 320;
  int height = 240;
  int instances = 48;
  int lanes = 4;
  double speed_min = 2.5;
  double speed_max = 4.0;
  int size_min = 22;
  int size_max = 30;
  double deformable_fraction = 0.5;
  double gap_px = 40.0;
  int spawn_jitter_frames = 12;
  double deform_period_min = 8.0;
  double deform_period_max = 14.0;
  double deform_amplitude = 0.6;
  double rigid_pose_amplitude = 0.1;  // frozen leg swing of rigid walkers, radians
  bool rigid_boxes = false;           // rigid class rendered as boxes instead of walkers
  double shadow_factor = 0.5;
  double noise_sigma = 2.0;
  bool crossing = false;

  bool operator==(const SceneGeneratorParams&) const = default;
};

SyntheticScene generate_scene(const SceneGeneratorParams& params, std::uint64_t seed);

Json to_json(const SyntheticScene& scene);
SyntheticScene scene_from_json(const Json& j);
Json to_json(const SceneGeneratorParams& params);
SceneGeneratorParams generator_params_from_json(const Json& j);

/// Run-length encoding of a row-major mask; counts alternate starting with a `false` run.
std::vector<int> rle_encode(const Mask& mask);
Mask rle_decode(const std::vector<int>& counts, int rows, int cols);

Json truth_record(int frame, const TruthInstance& truth);

/// Writes frame_<n>.png for every frame plus truth.jsonl.
void dump_scene(const SceneRenderer& renderer, const std::filesystem::path& dir);

}  // namespace motionclass
