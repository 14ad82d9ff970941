#pragma once

// Patch datasets cropped directly from synthetic-scene truth boxes, bypassing detection.

#include <map>

#include "motionclass/patches.hpp"
#include "motionclass/scene_synth.hpp"

namespace fixture {

struct TruthDataset {
  motionclass::PatchDataset dataset;
  std::vector<int> classes;  // per sequence
};

inline TruthDataset truth_dataset(const motionclass::SyntheticScene& scene, int side, int max_len) {
  using namespace motionclass;
  const SceneRenderer renderer(scene);
  std::map<int, PatchSequence> open;
  std::map<int, int> class_of;
  TruthDataset out;
  out.dataset.patch_size = side;
  out.dataset.min_seq_len = 3;
  auto flush = [&](PatchSequence& seq) {
    if (seq.size() >= 3) {
      out.dataset.sequences.push_back(seq);
      out.classes.push_back(class_of[seq.instance_id]);
    }
    seq.frames.clear();
    seq.patches.clear();
    seq.boxes.clear();
    ++seq.split_index;
  };
  for (int t = 0; t < scene.frame_count; ++t) {
    const auto frame = renderer.frame(t);
    for (const auto& inst : frame.truth) {
      const auto& box = inst.box;
      if (box.x_min <= 0 || box.y_min <= 0 || box.x_max >= scene.width || box.y_max >= scene.height) continue;
      auto& seq = open[inst.instance_id];
      seq.instance_id = inst.instance_id;
      class_of[inst.instance_id] = inst.class_id;
      if (!seq.frames.empty() && seq.frames.back() != t - 1) flush(seq);
      seq.frames.push_back(t);
      seq.boxes.push_back(box);
      seq.patches.push_back(extract_patch(frame.color, box.expanded(0.125 * std::max(box.width(), box.height())), side));
      if (static_cast<int>(seq.size()) == max_len) flush(seq);
    }
  }
  for (auto& [id, seq] : open) flush(seq);
  return out;
}

}  // namespace fixture
