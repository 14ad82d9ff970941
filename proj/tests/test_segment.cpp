#include "doctest.h"

#include <random>

#include "motionclass/scene_synth.hpp"
#include "motionclass/segment.hpp"

using namespace motionclass;

namespace {

GrayImage noisy_constant(int w, int h, float level, std::mt19937_64& rng) {
  std::normal_distribution<float> n(0.0f, 2.0f);
  GrayImage g(h, w);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = level + n(rng);
  return g;
}

}  // namespace

TEST_SUITE("segment") {
  TEST_CASE("constant scene is background after burn-in and weights stay normalised") {
    std::mt19937_64 rng(1);
    BackgroundModel model(64, 48);
    for (int t = 0; t < 60; ++t) {
      const Mask fg = model.update_and_classify(noisy_constant(64, 48, 100.0f, rng));
      if (t >= 30) CHECK(fg.cast<double>().mean() <= 0.01);
      for (int y = 0; y < 48; y += 7)
        for (int x = 0; x < 64; x += 5) CHECK(model.weight_sum(x, y) == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(model.min_variance() >= 4.0);
    }
    CHECK(model.frames_seen() == 60);
  }

  TEST_CASE("a pixel jumping ten sigma is foreground on the jump frame") {
    std::mt19937_64 rng(2);
    BackgroundModel model(16, 16);
    for (int t = 0; t < 40; ++t) model.update_and_classify(noisy_constant(16, 16, 80.0f, rng));
    GrayImage frame = noisy_constant(16, 16, 80.0f, rng);
    frame(5, 9) = 80.0f + 10.0f * 2.0f * std::sqrt(75.0f / 4.0f);
    const Mask fg = model.update_and_classify(frame);
    CHECK(fg(5, 9));
  }

  TEST_CASE("moving sprite is segmented against truth") {
    SyntheticScene scene;
    scene.frame_count = 80;
    scene.rng_seed = 4;
    SpriteSpec s;
    s.silhouette = Silhouette::kWalker;
    s.motion_kind = MotionKind::kDeformableOscillation;
    s.size_px = 28;
    s.velocity = {3.0, 0.0};
    s.spawn_center = {30.0, 120.0};
    s.spawn_frame = 35;
    s.lifetime = 45;
    s.appearance_seed = 9;
    scene.sprites.push_back(s);
    const SceneRenderer renderer(scene);
    BackgroundModel model(scene.width, scene.height);
    long hit = 0, truth_px = 0, fg_px = 0;
    for (int t = 0; t < scene.frame_count; ++t) {
      const auto f = renderer.frame(t);
      const Mask fg = model.update_and_classify(to_gray(f.color));
      if (t < 40) continue;
      Mask truth = Mask::Constant(scene.height, scene.width, false);
      for (const auto& inst : f.truth)
        truth.block(static_cast<Eigen::Index>(inst.box.y_min), static_cast<Eigen::Index>(inst.box.x_min),
                    inst.mask.rows(), inst.mask.cols()) = inst.mask;
      hit += (fg && truth).count();
      truth_px += truth.count();
      fg_px += fg.count();
    }
    REQUIRE(truth_px > 0);
    const double recall = static_cast<double>(hit) / truth_px;
    const double precision = static_cast<double>(hit) / fg_px;
    CHECK(recall >= 0.8);
    CHECK(precision >= 0.6);
  }

  TEST_CASE("identical streams give identical masks") {
    std::mt19937_64 a(5), b(5);
    BackgroundModel ma(20, 10), mb(20, 10);
    for (int t = 0; t < 20; ++t) {
      const float level = t < 10 ? 50.0f : 150.0f;
      CHECK((ma.update_and_classify(noisy_constant(20, 10, level, a)) ==
             mb.update_and_classify(noisy_constant(20, 10, level, b)))
                .all());
    }
  }

  TEST_CASE("frame size mismatch is rejected") {
    BackgroundModel model(8, 8);
    CHECK_THROWS_AS(model.update_and_classify(GrayImage::Zero(8, 9)), std::invalid_argument);
  }

  TEST_CASE("instance mask is the foreground inside the box") {
    const Mask full = Mask::Constant(40, 60, true);
    const Mask quarter = instance_mask(full, {0, 0, 30, 20});
    CHECK(quarter.count() == 600);
    CHECK(instance_mask(Mask::Constant(40, 60, false), {0, 0, 30, 20}).count() == 0);

    std::mt19937_64 rng(6);
    Mask fg(40, 60);
    for (Eigen::Index i = 0; i < fg.size(); ++i) fg.data()[i] = rng() % 3 == 0;
    const BoundingBox box{7, 5, 31, 22};
    const Mask m = instance_mask(fg, box);
    CHECK((m <= fg).all());
    for (int y = 0; y < 40; ++y)
      for (int x = 0; x < 60; ++x)
        if (m(y, x)) CHECK((x + 0.5 > box.x_min && x + 0.5 < box.x_max && y + 0.5 > box.y_min && y + 0.5 < box.y_max));
    CHECK((m.block(5, 7, 17, 24) == fg.block(5, 7, 17, 24)).all());
  }
}
