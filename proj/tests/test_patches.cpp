#include "doctest.h"

#include <filesystem>
#include <random>
#include <set>

#include "motionclass/patches.hpp"

using namespace motionclass;
namespace fs = std::filesystem;

namespace {

RgbImage random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RgbImage img(w, h);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng());
  return img;
}

TrackObservations track(int id, int first, int last, std::set<int> colliding = {}) {
  TrackObservations t{id, {}};
  for (int f = first; f <= last; ++f) {
    Observation o;
    o.frame = f;
    o.box = {double(f), 0, f + 10.0, 10};
    o.colliding = colliding.count(f) > 0;
    o.patch = RgbImage(8, 8, static_cast<std::uint8_t>(f));
    o.truth_class = id % 2;
    t.observations.push_back(o);
  }
  return t;
}

PatchParams params8() {
  PatchParams p;
  p.size = 8;
  return p;
}

}  // namespace

TEST_SUITE("patches") {
  TEST_CASE("box matching the patch size is an identity crop") {
    const auto frame = random_image(160, 120, 1);
    const auto patch = extract_patch(frame, {40, 30, 104, 94}, 64);
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x)
        for (int c = 0; c < 3; ++c) REQUIRE(patch.at(x, y, c) == frame.at(40 + x, 30 + y, c));
  }

  TEST_CASE("rectangular box crops a square of its longer side") {
    const auto frame = random_image(160, 120, 2);
    const BoundingBox box{50, 58, 82, 74};  // 32 x 16, centre (66, 66)
    CHECK(extract_patch(frame, box, 32) == resample_square(frame, 50, 50, 32, 32));
    CHECK(extract_patch(frame, box, 16) == resample_square(frame, 50, 50, 32, 16));
  }

  TEST_CASE("corner box is clamped into the frame") {
    const auto frame = random_image(100, 80, 3);
    const auto patch = extract_patch(frame, {-6, -4, 14, 10}, 24);
    CHECK(patch.width == 24);
    CHECK(patch.height == 24);
    CHECK(patch == resample_square(frame, 0, 0, 20, 24));
    CHECK_THROWS_AS(extract_patch(frame, {200, 200, 210, 210}, 24), std::invalid_argument);
    CHECK_THROWS_AS(extract_patch(frame, {5, 5, 5, 5}, 24), std::invalid_argument);
  }

  TEST_CASE("sequence building follows runs of consecutive frames") {
    const auto one = build_dataset({track(1, 0, 9)}, params8());
    REQUIRE(one.dataset.sequences.size() == 1);
    CHECK(one.dataset.sequences[0].size() == 10);
    CHECK(one.truth.at("seq_1_0") == std::vector<int>(10, 1));

    CHECK(build_dataset({track(2, 0, 1)}, params8()).dataset.sequences.empty());

    const auto split = build_dataset({track(3, 0, 9, {4, 5})}, params8());
    REQUIRE(split.dataset.sequences.size() == 2);
    CHECK(split.dataset.sequences[0].frames == std::vector<int>{0, 1, 2, 3});
    CHECK(split.dataset.sequences[1].frames == std::vector<int>{6, 7, 8, 9});
    CHECK(split.dataset.sequences[1].name() == "seq_3_1");

    auto keep = params8();
    keep.drop_colliding = false;
    CHECK(build_dataset({track(3, 0, 9, {4, 5})}, keep).dataset.sequences.size() == 1);

    auto gap = track(4, 0, 3);
    auto tail = track(4, 6, 8);
    gap.observations.insert(gap.observations.end(), tail.observations.begin(), tail.observations.end());
    const auto gapped = build_dataset({gap}, params8());
    REQUIRE(gapped.dataset.sequences.size() == 2);
    CHECK(gapped.dataset.sequences[1].frames.front() == 6);
    check_invariants(gapped.dataset);
  }

  TEST_CASE("invariant check rejects broken sequences") {
    auto built = build_dataset({track(1, 0, 5)}, params8());
    auto bad = built.dataset;
    bad.sequences[0].frames[2] = 9;
    CHECK_THROWS_AS(check_invariants(bad), std::runtime_error);
    bad = built.dataset;
    bad.sequences[0].patches[0] = RgbImage(9, 9);
    CHECK_THROWS_AS(check_invariants(bad), std::runtime_error);
    bad = built.dataset;
    bad.min_seq_len = 7;
    CHECK_THROWS_AS(check_invariants(bad), std::runtime_error);
  }

  TEST_CASE("dataset round-trips through disk") {
    const fs::path dir = fs::temp_directory_path() / "motionclass_test_dataset";
    fs::remove_all(dir);
    auto built = build_dataset({track(1, 0, 5), track(2, 3, 9, {6})}, params8());
    built.dataset.sequences[0].patches[2] = random_image(8, 8, 4);
    write_dataset(dir, built.dataset, built.truth);
    const auto back = read_dataset(dir);
    REQUIRE(back.sequences.size() == built.dataset.sequences.size());
    CHECK(back.patch_size == 8);
    CHECK(back.min_seq_len == built.dataset.min_seq_len);
    for (std::size_t i = 0; i < back.sequences.size(); ++i) {
      const auto& a = back.sequences[i];
      const auto& b = built.dataset.sequences[i];
      CHECK(a.name() == b.name());
      CHECK(a.frames == b.frames);
      CHECK(a.boxes == b.boxes);
      CHECK(a.patches == b.patches);
    }
    CHECK(read_truth(dir) == built.truth);
  }
}
