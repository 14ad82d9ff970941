#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "motionclass/config.hpp"
#include "motionclass/ingest.hpp"
#include "motionclass/png_io.hpp"

using namespace motionclass;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("motionclass_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("directory of PNGs yields frames in filename order") {
    const auto dir = scratch("pngs");
    for (int i = 4; i >= 0; --i) {
      RgbImage img(6, 4, static_cast<std::uint8_t>(10 * i));
      write_png(dir / ("f" + std::to_string(i) + ".png"), img);
    }
    DirectorySource source(dir, 10.0);
    CHECK(source.frame_count() == 5);
    for (int i = 0; i < 5; ++i) {
      auto f = source.next();
      REQUIRE(f);
      CHECK(f->index == i);
      CHECK(f->timestamp == doctest::Approx(i / 10.0));
      CHECK(f->color.at(0, 0, 0) == 10 * i);
    }
    CHECK_FALSE(source.next());
  }

  TEST_CASE("empty directory is an empty stream") {
    DirectorySource source(scratch("empty"));
    CHECK(source.frame_count() == 0);
    CHECK_FALSE(source.next());
  }

  TEST_CASE("corrupt frame names its index") {
    const auto dir = scratch("corrupt");
    write_png(dir / "a.png", RgbImage(4, 4));
    std::ofstream(dir / "b.png") << "not a png";
    DirectorySource source(dir);
    CHECK(source.next());
    CHECK_THROWS_WITH(source.next(), doctest::Contains("frame 1"));
  }

  TEST_CASE("scene spec yields frame_count frames with truth") {
    SyntheticScene scene;
    scene.frame_count = 30;
    SceneSource source(scene);
    int n = 0;
    while (auto f = source.next()) {
      CHECK(f->index == n++);
      CHECK(source.truth() != nullptr);
    }
    CHECK(n == 30);
  }

  TEST_CASE("gray conversion uses fixed luma weights and is exact on gray input") {
    RgbImage rgb(3, 1);
    for (int x = 0; x < 3; ++x)
      for (int c = 0; c < 3; ++c) rgb.at(x, 0, c) = static_cast<std::uint8_t>(40 * x + 7);
    rgb.at(2, 0, 0) = 200;
    rgb.at(2, 0, 1) = 100;
    rgb.at(2, 0, 2) = 50;
    const auto g = to_gray(rgb);
    CHECK(g(0, 0) == 7.0f);
    CHECK(g(0, 1) == 47.0f);
    CHECK(g(0, 2) == doctest::Approx(0.299 * 200 + 0.587 * 100 + 0.114 * 50));
  }
}

TEST_SUITE("config") {
  TEST_CASE("serialize then parse is the identity") {
    PipelineConfig c;
    c.seed = 42;
    c.flow.score_min = 0.7;
    c.cluster.mode = PairingMode::kStatic;
    c.cluster.conv_channels = {8, 8};
    c.patches.size = 32;
    c.input.synthetic.instances = 50;
    c.classifier.augment.flip_prob = 0.25;
    const auto parsed = config_from_json(to_json(c));
    CHECK(parsed == c);
    CHECK(to_json(parsed).dump() == to_json(c).dump());
    CHECK(config_from_json(Json::object()) == PipelineConfig{});
  }

  TEST_CASE("unknown keys are rejected with their section") {
    CHECK_THROWS_WITH_AS(config_from_json(Json::parse(R"({"flow": {"score": 1}})")), doctest::Contains("score"),
                         std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"bogus": 1})")), std::invalid_argument);
  }

  TEST_CASE("stage seeds are fixed offsets") {
    const auto s = derive_seeds(5);
    CHECK(s.scene == 5);
    CHECK(s.heldout_scene == 1005);
    CHECK(s.cluster == 2005);
    CHECK(s.classifier == 3005);
    CHECK(s.evaluate == 4005);
  }

  TEST_CASE("config path falls back to the environment") {
    CHECK(resolve_config_path("a.json") == fs::path("a.json"));
    ::setenv("MOTIONCLASS_CONFIG", "env.json", 1);
    CHECK(resolve_config_path("") == fs::path("env.json"));
    ::unsetenv("MOTIONCLASS_CONFIG");
    CHECK_FALSE(resolve_config_path(""));
  }
}
