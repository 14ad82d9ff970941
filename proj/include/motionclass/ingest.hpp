#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "motionclass/image.hpp"
#include "motionclass/scene_synth.hpp"

namespace motionclass {

struct Frame {
  int index = 0;
  double timestamp = 0.0;  // seconds, index / fps
  GrayImage gray;
  RgbImage color;
};

Frame make_frame(int index, double fps, RgbImage color);

/// Single-consumer stream of frames in temporal order.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::optional<Frame> next() = 0;
  virtual int frame_count() const = 0;
  /// Ground truth of the last frame returned, when the source has any.
  virtual const std::vector<TruthInstance>* truth() const { return nullptr; }
};

class SceneSource final : public FrameSource {
 public:
  explicit SceneSource(SyntheticScene scene) : renderer_(std::move(scene)) {}
  std::optional<Frame> next() override;
  int frame_count() const override { return renderer_.frame_count(); }
  const std::vector<TruthInstance>* truth() const override { return &truth_; }

 private:
  SceneRenderer renderer_;
  int cursor_ = 0;
  std::vector<TruthInstance> truth_;
};

/// PNG files of a directory in lexicographic filename order.
class DirectorySource final : public FrameSource {
 public:
  explicit DirectorySource(const std::filesystem::path& dir, double fps = 30.0);
  std::optional<Frame> next() override;
  int frame_count() const override { return static_cast<int>(files_.size()); }

 private:
  std::vector<std::filesystem::path> files_;
  double fps_;
  std::size_t cursor_ = 0;
};

/// A directory yields a DirectorySource; a .json file is parsed as a scene spec.
std::unique_ptr<FrameSource> open_source(const std::filesystem::path& uri);

}  // namespace motionclass
