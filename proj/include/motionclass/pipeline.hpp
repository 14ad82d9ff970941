#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "motionclass/config.hpp"
#include "motionclass/flow.hpp"
#include "motionclass/ingest.hpp"
#include "motionclass/patches.hpp"

namespace motionclass {

inline constexpr std::array<const char*, 6> kTimingRows{
    "Sparse optical flow computing", "Static and dynamic obstacles separation", "Dynamic points distinction",
    "Obstacles tracking",            "Obstacles Segmentation",                  "Obstacles Classification"};

/// Seconds spent per detection-chain step on one frame.
struct FrameTiming {
  double flow = 0.0;
  double separation = 0.0;
  double distinction = 0.0;
  double tracking = 0.0;
  double segmentation = 0.0;

  double chain() const { return flow + separation + distinction + tracking + segmentation; }
};

struct ChainOptions {
  bool keep_logs = true;
  std::function<void(int frame, const Mask& foreground)> on_mask;
  std::function<void(int frame, const std::vector<FlowPoint>& flow)> on_flow;
};

struct ChainResult {
  BuiltDataset built;
  std::vector<FrameTiming> timing;
  std::vector<std::string> track_lines;      // JSON lines: frame, id, box, confirmed, colliding
  std::vector<std::string> detection_lines;  // JSON lines: frame, detections
  int frames = 0;
};

/// Flow -> split -> DBSCAN -> SORT -> background model -> patch sequences, over the whole stream.
ChainResult run_detection_chain(FrameSource& source, const PipelineConfig& config, const ChainOptions& options = {});

double median(std::vector<double> values);

enum class Stage { kExtract, kCluster, kClassify, kEvaluate, kOverlay };

const char* stage_name(Stage stage);
/// Comma-separated stage names, or "run" for all stages in order.
std::vector<Stage> parse_stages(const std::string& list);

/// Scene JSON, PNG directory, or the configured synthetic generator.
std::unique_ptr<FrameSource> make_source(const PipelineConfig& config, bool heldout);

void run_stage(Stage stage, const PipelineConfig& config, const std::filesystem::path& out);
void run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages, const std::filesystem::path& out);

/// Writes the scene's frames and truth.jsonl; the `render` CLI command.
void render_scene(const PipelineConfig& config, bool heldout, const std::filesystem::path& out);

}  // namespace motionclass
