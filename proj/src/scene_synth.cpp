#include "motionclass/scene_synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "motionclass/png_io.hpp"

namespace motionclass {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash3(std::uint64_t seed, std::int64_t a, std::int64_t b) {
  return mix(mix(seed ^ mix(static_cast<std::uint64_t>(a))) ^ static_cast<std::uint64_t>(b));
}

double unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

Eigen::Vector2d half_extent(const SpriteSpec& s) {
  if (s.silhouette == Silhouette::kBox) {
    return {0.5 * s.size_px * std::min(1.0, s.aspect), 0.5 * s.size_px * std::min(1.0, 1.0 / s.aspect)};
  }
  return {0.5 * s.size_px, 0.5 * s.size_px};
}

double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Silhouette membership in sprite-local coordinates (origin at the sprite centre).
bool inside(const SpriteSpec& s, int age, double u, double v) {
  const double size = s.size_px;
  if (s.silhouette == Silhouette::kBox) {
    const Eigen::Vector2d h = half_extent(s);
    return u >= -h.x() && u < h.x() && v >= -h.y() && v < h.y();
  }
  // Walker: torso plus two legs swinging in antiphase.
  if (std::abs(u) <= 0.25 * size && v >= -0.5 * size && v < 0.1 * size) return true;
  const double swing = leg_swing(s, age);
  const double leg_len = 0.35 * size;
  const double half_thick = 0.1 * size;
  const Eigen::Vector2d p(u, v);
  for (int side : {-1, 1}) {
    const double angle = side * swing;
    const Eigen::Vector2d hip(side * 0.14 * size, 0.05 * size);
    const Eigen::Vector2d foot = hip + leg_len * Eigen::Vector2d(std::sin(angle), std::cos(angle));
    if (segment_distance(p, hip, foot) <= half_thick) return true;
  }
  return false;
}

struct Appearance {
  Eigen::Vector3d color;
  double texture_amplitude;
};

Appearance appearance(const SpriteSpec& s) {
  const std::uint64_t seed = s.appearance_seed;
  const double luma = 150.0 + 65.0 * unit(hash3(seed, 1, 0));
  Eigen::Vector3d tint(0.75 + 0.5 * unit(hash3(seed, 2, 0)), 0.75 + 0.5 * unit(hash3(seed, 3, 0)),
                       0.75 + 0.5 * unit(hash3(seed, 4, 0)));
  const double tint_luma = kLumaR * tint.x() + kLumaG * tint.y() + kLumaB * tint.z();
  Appearance a;
  a.color = (tint * (luma / tint_luma)).cwiseMin(225.0);
  a.texture_amplitude = 15.0 + 15.0 * unit(hash3(seed, 5, 0));
  return a;
}

constexpr int kTextureCell = 4;

}  // namespace

void validate(const SyntheticScene& scene) {
  if (scene.width <= 0 || scene.height <= 0) throw std::invalid_argument("scene: width and height must be positive");
  if (scene.frame_count < 0) throw std::invalid_argument("scene: frame_count must be non-negative");
  if (!(scene.fps > 0.0)) throw std::invalid_argument("scene: fps must be positive");
  for (std::size_t i = 0; i < scene.sprites.size(); ++i) {
    const auto& s = scene.sprites[i];
    const std::string who = "sprite " + std::to_string(i);
    if (s.size_px < 4) throw std::invalid_argument(who + ": size_px must be >= 4");
    if (s.lifetime < 1) throw std::invalid_argument(who + ": lifetime must be >= 1");
    if (!s.velocity.allFinite() || !s.spawn_center.allFinite())
      throw std::invalid_argument(who + ": velocity and spawn_center must be finite");
    if (!(s.aspect > 0.0)) throw std::invalid_argument(who + ": aspect must be positive");
    if (!(s.deform_period > 0.0)) throw std::invalid_argument(who + ": deform_period must be positive");
    const Eigen::Vector2d h = half_extent(s);
    const Eigen::Vector2d c = s.spawn_center;
    if (c.x() - h.x() < 0.0 || c.y() - h.y() < 0.0 || c.x() + h.x() > scene.width || c.y() + h.y() > scene.height) {
      throw std::invalid_argument(who + ": exceeds frame bounds at spawn (centre " + std::to_string(c.x()) + "," +
                                  std::to_string(c.y()) + ", size " + std::to_string(s.size_px) + ")");
    }
  }
}

double leg_swing(const SpriteSpec& s, int age) {
  if (s.motion_kind == MotionKind::kRigidTranslation) return s.deform_amplitude * std::sin(s.phase);
  return s.deform_amplitude * std::sin(2.0 * std::numbers::pi * age / s.deform_period + s.phase);
}

Eigen::Vector2d sprite_center(const SpriteSpec& sprite, int t) {
  return sprite.spawn_center + sprite.velocity * static_cast<double>(t - sprite.spawn_frame);
}

bool sprite_alive(const SpriteSpec& sprite, int t) {
  return t >= sprite.spawn_frame && t < sprite.spawn_frame + sprite.lifetime;
}

SceneRenderer::SceneRenderer(SyntheticScene scene) : scene_(std::move(scene)) {
  validate(scene_);
  const auto& bg = scene_.background;
  background_ = Plane<float>::Constant(scene_.height, scene_.width, static_cast<float>(bg.base));
  for (int k = 0; k < bg.texture_blocks; ++k) {
    const auto seed = scene_.rng_seed;
    const int bw = 6 + static_cast<int>(18 * unit(hash3(seed, k, 1)));
    const int bh = 6 + static_cast<int>(18 * unit(hash3(seed, k, 2)));
    const int x0 = static_cast<int>((scene_.width - bw) * unit(hash3(seed, k, 3)));
    const int y0 = static_cast<int>((scene_.height - bh) * unit(hash3(seed, k, 4)));
    const double offset = bg.texture_amplitude * (2.0 * unit(hash3(seed, k, 5)) - 1.0);
    for (int y = std::max(0, y0); y < std::min(scene_.height, y0 + bh); ++y)
      for (int x = std::max(0, x0); x < std::min(scene_.width, x0 + bw); ++x)
        background_(y, x) += static_cast<float>(offset);
  }
}

RenderedFrame SceneRenderer::frame(int t) const {
  const int w = scene_.width;
  const int h = scene_.height;
  std::array<Plane<double>, 3> rgb;
  for (auto& c : rgb) c = background_.cast<double>();

  RenderedFrame out;
  for (std::size_t id = 0; id < scene_.sprites.size(); ++id) {
    const auto& s = scene_.sprites[id];
    if (!sprite_alive(s, t)) continue;
    const int age = t - s.spawn_frame;
    const Eigen::Vector2d c = sprite_center(s, t);
    const Eigen::Vector2d ext = half_extent(s);
    const int x0 = std::max(0, static_cast<int>(std::floor(c.x() - ext.x())) - 1);
    const int y0 = std::max(0, static_cast<int>(std::floor(c.y() - ext.y())) - 1);
    const int x1 = std::min(w - 1, static_cast<int>(std::ceil(c.x() + ext.x())) + 1);
    const int y1 = std::min(h - 1, static_cast<int>(std::ceil(c.y() + ext.y())) + 1);
    if (x0 > x1 || y0 > y1) continue;

    const Appearance look = appearance(s);
    Mask full = Mask::Constant(y1 - y0 + 1, x1 - x0 + 1, false);
    int min_x = x1 + 1, min_y = y1 + 1, max_x = -1, max_y = -1;
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double u = x + 0.5 - c.x();
        const double v = y + 0.5 - c.y();
        if (!inside(s, age, u, v)) continue;
        full(y - y0, x - x0) = true;
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        const auto cell_u = static_cast<std::int64_t>(std::floor((u + 1024.0) / kTextureCell));
        const auto cell_v = static_cast<std::int64_t>(std::floor((v + 1024.0) / kTextureCell));
        const double texture = (hash3(s.appearance_seed, cell_u, cell_v) & 1U) ? look.texture_amplitude : -look.texture_amplitude;
        for (int ch = 0; ch < 3; ++ch) rgb[ch](y, x) = look.color[ch] + texture;
      }
    }
    if (max_x < 0) continue;
    TruthInstance truth;
    truth.instance_id = static_cast<int>(id);
    truth.class_id = s.class_id;
    truth.box = {static_cast<double>(min_x), static_cast<double>(min_y), static_cast<double>(max_x + 1),
                 static_cast<double>(max_y + 1)};
    truth.mask = full.block(min_y - y0, min_x - x0, max_y - min_y + 1, max_x - min_x + 1);
    out.truth.push_back(std::move(truth));
  }

  const auto& shadow = scene_.background.shadow;
  if (shadow.factor != 1.0) {
    for (int x = 0; x < w; ++x) {
      const double xc = x + 0.5;
      if (xc < shadow.x_begin || xc >= shadow.x_end) continue;
      for (auto& c : rgb) c.col(x) *= shadow.factor;
    }
  }

  std::mt19937_64 rng(mix(scene_.rng_seed ^ mix(static_cast<std::uint64_t>(t) + 0x5151)));
  std::normal_distribution<double> noise(0.0, scene_.background.noise_sigma);
  const bool noisy = scene_.background.noise_sigma > 0.0;
  out.color = RgbImage(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int ch = 0; ch < 3; ++ch) {
        const double v = rgb[ch](y, x) + (noisy ? noise(rng) : 0.0);
        out.color.at(x, y, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

RenderedScene render(const SyntheticScene& scene) {
  SceneRenderer renderer(scene);
  RenderedScene out;
  out.frames.reserve(scene.frame_count);
  out.truth.reserve(scene.frame_count);
  for (int t = 0; t < scene.frame_count; ++t) {
    auto f = renderer.frame(t);
    out.frames.push_back(std::move(f.color));
    out.truth.push_back(std::move(f.truth));
  }
  return out;
}

SyntheticScene generate_scene(const SceneGeneratorParams& p, std::uint64_t seed) {
  if (p.lanes < 1 || p.instances < 0) throw std::invalid_argument("generator: lanes >= 1 and instances >= 0 required");
  if (p.size_min < 4 || p.size_max < p.size_min) throw std::invalid_argument("generator: invalid size range");
  if (!(p.speed_min > 0.0) || p.speed_max < p.speed_min) throw std::invalid_argument("generator: invalid speed range");
  const double lane_height = static_cast<double>(p.height) / p.lanes;
  if (lane_height < p.size_max + 4) throw std::invalid_argument("generator: lanes too narrow for size_max");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  SyntheticScene scene;
  scene.width = p.width;
  scene.height = p.height;
  scene.rng_seed = mix(seed ^ 0xbada55ULL);
  scene.background.noise_sigma = p.noise_sigma;
  scene.background.shadow = {0.5 * p.width, static_cast<double>(p.width), p.shadow_factor};

  const int deformable = static_cast<int>(std::lround(p.deformable_fraction * p.instances));
  std::vector<int> kinds(p.instances, 0);
  std::fill(kinds.begin(), kinds.begin() + deformable, 1);
  std::shuffle(kinds.begin(), kinds.end(), rng);

  struct Lane {
    double y, speed;
    int direction;
    int next_free;
    double last_half;
  };
  std::vector<Lane> lanes;
  for (int k = 0; k < p.lanes; ++k) {
    lanes.push_back({lane_height * (k + 0.5), p.speed_min + (p.speed_max - p.speed_min) * u01(rng),
                     (k % 2 == 0) ? 1 : -1, 0, 0.0});
  }

  for (int i = 0; i < p.instances; ++i) {
    // The lane that frees up first takes the next sprite.
    auto lane_it = std::min_element(lanes.begin(), lanes.end(),
                                    [](const Lane& a, const Lane& b) { return a.next_free < b.next_free; });
    Lane& lane = *lane_it;
    SpriteSpec s;
    s.motion_kind = kinds[i] ? MotionKind::kDeformableOscillation : MotionKind::kRigidTranslation;
    s.class_id = kinds[i];
    s.size_px = p.size_min + static_cast<int>((p.size_max - p.size_min + 1) * u01(rng));
    s.size_px = std::min(s.size_px, p.size_max);
    const bool box = kinds[i] == 0 && p.rigid_boxes;
    s.silhouette = box ? Silhouette::kBox : Silhouette::kWalker;
    s.aspect = box ? 0.75 + 0.6 * u01(rng) : 1.0;
    s.appearance_seed = rng();
    s.deform_period = p.deform_period_min + (p.deform_period_max - p.deform_period_min) * u01(rng);
    s.deform_amplitude = kinds[i] ? p.deform_amplitude : p.rigid_pose_amplitude;
    s.phase = 2.0 * std::numbers::pi * u01(rng);
    const double half = 0.5 * s.size_px;
    const double margin = 2.0;
    const double x_start = lane.direction > 0 ? margin + half : p.width - margin - half;
    const double travel = p.width - 2.0 * (margin + half);
    s.velocity = {lane.direction * lane.speed, 0.0};
    s.spawn_center = {x_start, lane.y};
    const int jitter = static_cast<int>(p.spawn_jitter_frames * u01(rng));
    s.spawn_frame = lane.next_free + jitter;
    s.lifetime = std::max(1, static_cast<int>(std::floor(travel / lane.speed)));
    lane.next_free = s.spawn_frame + static_cast<int>(std::ceil((2.0 * half + p.gap_px) / lane.speed));
    lane.last_half = half;
    scene.sprites.push_back(s);
  }

  if (p.crossing) {
    // Two sprites on mirrored diagonals that meet at the frame centre.
    const int size = p.size_min;
    const double half = 0.5 * size + 2.0;
    const int start = lanes.front().next_free;
    const Eigen::Vector2d centre(0.5 * p.width, 0.5 * p.height);
    const double steps = std::floor(std::min(centre.x() - half, centre.y() - half) / p.speed_min);
    for (int side : {-1, 1}) {
      SpriteSpec s;
      s.class_id = 0;
      s.size_px = size;
      s.velocity = {-side * p.speed_min, p.speed_min};
      s.spawn_center = centre - steps * s.velocity;
      s.spawn_frame = start;
      s.lifetime = static_cast<int>(2 * steps);
      s.appearance_seed = rng();
      scene.sprites.push_back(s);
    }
  }

  int end = 0;
  for (const auto& s : scene.sprites) end = std::max(end, s.spawn_frame + s.lifetime);
  scene.frame_count = end;
  return scene;
}

namespace {

const char* kind_name(MotionKind k) {
  return k == MotionKind::kRigidTranslation ? "rigid_translation" : "deformable_oscillation";
}

MotionKind kind_from(const std::string& s) {
  if (s == "rigid_translation") return MotionKind::kRigidTranslation;
  if (s == "deformable_oscillation") return MotionKind::kDeformableOscillation;
  throw std::invalid_argument("sprite: unknown motion_kind '" + s + "'");
}

Eigen::Vector2d vec2(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

Json to_json(const SyntheticScene& scene) {
  Json sprites = Json::array();
  for (const auto& s : scene.sprites) {
    sprites.push_back({{"class_id", s.class_id},
                       {"motion_kind", kind_name(s.motion_kind)},
                       {"silhouette", s.silhouette == Silhouette::kBox ? "box" : "walker"},
                       {"size_px", s.size_px},
                       {"velocity", {s.velocity.x(), s.velocity.y()}},
                       {"spawn_center", {s.spawn_center.x(), s.spawn_center.y()}},
                       {"spawn_frame", s.spawn_frame},
                       {"lifetime", s.lifetime},
                       {"appearance_seed", s.appearance_seed},
                       {"aspect", s.aspect},
                       {"deform_period", s.deform_period},
                       {"deform_amplitude", s.deform_amplitude},
                       {"phase", s.phase}});
  }
  const auto& bg = scene.background;
  return {{"width", scene.width},
          {"height", scene.height},
          {"frame_count", scene.frame_count},
          {"fps", scene.fps},
          {"background",
           {{"base", bg.base},
            {"texture_amplitude", bg.texture_amplitude},
            {"texture_blocks", bg.texture_blocks},
            {"noise_sigma", bg.noise_sigma},
            {"shadow", {{"x_begin", bg.shadow.x_begin}, {"x_end", bg.shadow.x_end}, {"factor", bg.shadow.factor}}}}},
          {"sprites", sprites},
          {"rng_seed", scene.rng_seed}};
}

SyntheticScene scene_from_json(const Json& j) {
  reject_unknown_keys(j, {"width", "height", "frame_count", "fps", "background", "sprites", "rng_seed"}, "scene");
  SyntheticScene scene;
  read_optional(j, "width", scene.width);
  read_optional(j, "height", scene.height);
  read_optional(j, "frame_count", scene.frame_count);
  read_optional(j, "fps", scene.fps);
  read_optional(j, "rng_seed", scene.rng_seed);
  if (auto it = j.find("background"); it != j.end()) {
    reject_unknown_keys(*it, {"base", "texture_amplitude", "texture_blocks", "noise_sigma", "shadow"}, "scene.background");
    auto& bg = scene.background;
    read_optional(*it, "base", bg.base);
    read_optional(*it, "texture_amplitude", bg.texture_amplitude);
    read_optional(*it, "texture_blocks", bg.texture_blocks);
    read_optional(*it, "noise_sigma", bg.noise_sigma);
    if (auto sh = it->find("shadow"); sh != it->end()) {
      reject_unknown_keys(*sh, {"x_begin", "x_end", "factor"}, "scene.background.shadow");
      read_optional(*sh, "x_begin", bg.shadow.x_begin);
      read_optional(*sh, "x_end", bg.shadow.x_end);
      read_optional(*sh, "factor", bg.shadow.factor);
    }
  }
  if (auto it = j.find("sprites"); it != j.end()) {
    for (const auto& js : *it) {
      reject_unknown_keys(js,
                          {"class_id", "motion_kind", "silhouette", "size_px", "velocity", "spawn_center", "spawn_frame", "lifetime",
                           "appearance_seed", "aspect", "deform_period", "deform_amplitude", "phase"},
                          "scene.sprites[]");
      SpriteSpec s;
      read_optional(js, "class_id", s.class_id);
      if (js.contains("motion_kind")) s.motion_kind = kind_from(js.at("motion_kind").get<std::string>());
      if (js.contains("silhouette")) {
        const auto name = js.at("silhouette").get<std::string>();
        if (name != "box" && name != "walker") throw std::invalid_argument("sprite: unknown silhouette '" + name + "'");
        s.silhouette = name == "box" ? Silhouette::kBox : Silhouette::kWalker;
      }
      read_optional(js, "size_px", s.size_px);
      if (js.contains("velocity")) s.velocity = vec2(js.at("velocity"));
      if (js.contains("spawn_center")) s.spawn_center = vec2(js.at("spawn_center"));
      read_optional(js, "spawn_frame", s.spawn_frame);
      read_optional(js, "lifetime", s.lifetime);
      read_optional(js, "appearance_seed", s.appearance_seed);
      read_optional(js, "aspect", s.aspect);
      read_optional(js, "deform_period", s.deform_period);
      read_optional(js, "deform_amplitude", s.deform_amplitude);
      read_optional(js, "phase", s.phase);
      scene.sprites.push_back(s);
    }
  }
  validate(scene);
  return scene;
}

Json to_json(const SceneGeneratorParams& p) {
  return {{"width", p.width},
          {"height", p.height},
          {"instances", p.instances},
          {"lanes", p.lanes},
          {"speed_min", p.speed_min},
          {"speed_max", p.speed_max},
          {"size_min", p.size_min},
          {"size_max", p.size_max},
          {"deformable_fraction", p.deformable_fraction},
          {"gap_px", p.gap_px},
          {"spawn_jitter_frames", p.spawn_jitter_frames},
          {"deform_period_min", p.deform_period_min},
          {"deform_period_max", p.deform_period_max},
          {"deform_amplitude", p.deform_amplitude},
          {"rigid_pose_amplitude", p.rigid_pose_amplitude},
          {"rigid_boxes", p.rigid_boxes},
          {"shadow_factor", p.shadow_factor},
          {"noise_sigma", p.noise_sigma},
          {"crossing", p.crossing}};
}

SceneGeneratorParams generator_params_from_json(const Json& j) {
  reject_unknown_keys(j,
                      {"width", "height", "instances", "lanes", "speed_min", "speed_max", "size_min", "size_max",
                       "deformable_fraction", "gap_px", "spawn_jitter_frames", "deform_period_min", "deform_period_max",
                       "deform_amplitude", "rigid_pose_amplitude", "rigid_boxes", "shadow_factor", "noise_sigma",
                       "crossing"},
                      "synthetic");
  SceneGeneratorParams p;
  read_optional(j, "width", p.width);
  read_optional(j, "height", p.height);
  read_optional(j, "instances", p.instances);
  read_optional(j, "lanes", p.lanes);
  read_optional(j, "speed_min", p.speed_min);
  read_optional(j, "speed_max", p.speed_max);
  read_optional(j, "size_min", p.size_min);
  read_optional(j, "size_max", p.size_max);
  read_optional(j, "deformable_fraction", p.deformable_fraction);
  read_optional(j, "gap_px", p.gap_px);
  read_optional(j, "spawn_jitter_frames", p.spawn_jitter_frames);
  read_optional(j, "deform_period_min", p.deform_period_min);
  read_optional(j, "deform_period_max", p.deform_period_max);
  read_optional(j, "deform_amplitude", p.deform_amplitude);
  read_optional(j, "rigid_pose_amplitude", p.rigid_pose_amplitude);
  read_optional(j, "rigid_boxes", p.rigid_boxes);
  read_optional(j, "shadow_factor", p.shadow_factor);
  read_optional(j, "noise_sigma", p.noise_sigma);
  read_optional(j, "crossing", p.crossing);
  return p;
}

std::vector<int> rle_encode(const Mask& mask) {
  std::vector<int> counts;
  bool current = false;
  int run = 0;
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    const bool v = mask.data()[i];
    if (v != current) {
      counts.push_back(run);
      run = 0;
      current = v;
    }
    ++run;
  }
  counts.push_back(run);
  return counts;
}

Mask rle_decode(const std::vector<int>& counts, int rows, int cols) {
  Mask mask = Mask::Constant(rows, cols, false);
  Eigen::Index pos = 0;
  bool value = false;
  for (int c : counts) {
    if (c < 0 || pos + c > mask.size()) throw std::invalid_argument("rle: counts exceed mask size");
    for (int k = 0; k < c; ++k) mask.data()[pos++] = value;
    value = !value;
  }
  if (pos != mask.size()) throw std::invalid_argument("rle: counts do not cover mask");
  return mask;
}

Json truth_record(int frame, const TruthInstance& truth) {
  return {{"frame", frame},
          {"instance_id", truth.instance_id},
          {"class_id", truth.class_id},
          {"box", {truth.box.x_min, truth.box.y_min, truth.box.x_max, truth.box.y_max}},
          {"mask", {{"size", {truth.mask.rows(), truth.mask.cols()}}, {"counts", rle_encode(truth.mask)}}}};
}

void dump_scene(const SceneRenderer& renderer, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream truth_file(dir / "truth.jsonl");
  if (!truth_file) throw std::runtime_error("cannot write " + (dir / "truth.jsonl").string());
  for (int t = 0; t < renderer.frame_count(); ++t) {
    const auto f = renderer.frame(t);
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.png", t);
    write_png(dir / name, f.color);
    for (const auto& inst : f.truth) truth_file << truth_record(t, inst).dump() << '\n';
  }
}

}  // namespace motionclass
