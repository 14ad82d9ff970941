#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "motionclass/classifier.hpp"
#include "motionclass/flow.hpp"
#include "motionclass/json_util.hpp"
#include "motionclass/motion.hpp"
#include "motionclass/patches.hpp"
#include "motionclass/scene_synth.hpp"
#include "motionclass/segment.hpp"
#include "motionclass/seqclust.hpp"
#include "motionclass/tracker.hpp"

namespace motionclass {

struct InputConfig {
  std::string source;          // scene JSON or PNG directory; empty uses `synthetic` with the scene seed
  std::string heldout_source;  // same, for the evaluation stream; empty uses `synthetic` with the held-out seed
  SceneGeneratorParams synthetic;

  bool operator==(const InputConfig&) const = default;
};

struct ExtractConfig {
  double detection_padding = 3.0;  // px added around the flow-point hull before tracking
  double truth_iou_min = 0.5;      // patch box vs truth box, for evaluation labels
  bool dump_masks = true;
  bool dump_flow = false;

  bool operator==(const ExtractConfig&) const = default;
};

struct EvaluateConfig {
  int top_m = 8;
  bool contact_sheet = true;

  bool operator==(const EvaluateConfig&) const = default;
};

struct PipelineConfig {
  std::uint64_t seed = 1;
  InputConfig input;
  FlowParams flow;
  MotionParams motion;
  TrackerParams tracker;
  SegmentParams segment;
  PatchParams patches;
  ExtractConfig extract;
  ClusterParams cluster;
  ClassifierParams classifier;
  EvaluateConfig evaluate;

  bool operator==(const PipelineConfig&) const = default;
};

/// Per-stage seeds at fixed offsets from the master seed.
struct StageSeeds {
  std::uint64_t scene;
  std::uint64_t heldout_scene;
  std::uint64_t cluster;
  std::uint64_t classifier;
  std::uint64_t evaluate;
};

StageSeeds derive_seeds(std::uint64_t master);

Json to_json(const PipelineConfig& config);
/// Missing keys keep their defaults; unknown keys throw std::invalid_argument naming the section.
PipelineConfig config_from_json(const Json& j);

PipelineConfig load_config(const std::filesystem::path& path);

/// Explicit path, else $MOTIONCLASS_CONFIG, else none.
std::optional<std::filesystem::path> resolve_config_path(const std::string& explicit_path);

}  // namespace motionclass
