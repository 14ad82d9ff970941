#include "motionclass/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "motionclass/png_io.hpp"

namespace motionclass {

Frame make_frame(int index, double fps, RgbImage color) {
  Frame f;
  f.index = index;
  f.timestamp = index / fps;
  f.gray = to_gray(color);
  f.color = std::move(color);
  return f;
}

std::optional<Frame> SceneSource::next() {
  if (cursor_ >= renderer_.frame_count()) return std::nullopt;
  auto rendered = renderer_.frame(cursor_);
  truth_ = std::move(rendered.truth);
  return make_frame(cursor_++, renderer_.scene().fps, std::move(rendered.color));
}

DirectorySource::DirectorySource(const std::filesystem::path& dir, double fps) : fps_(fps) {
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files_.push_back(entry.path());
  }
  std::sort(files_.begin(), files_.end());
}

std::optional<Frame> DirectorySource::next() {
  if (cursor_ >= files_.size()) return std::nullopt;
  const int index = static_cast<int>(cursor_);
  RgbImage image;
  try {
    image = read_png(files_[cursor_]);
  } catch (const std::exception& e) {
    throw std::runtime_error("frame " + std::to_string(index) + ": " + e.what());
  }
  ++cursor_;
  return make_frame(index, fps_, std::move(image));
}

std::unique_ptr<FrameSource> open_source(const std::filesystem::path& uri) {
  if (std::filesystem::is_directory(uri)) return std::make_unique<DirectorySource>(uri);
  if (!std::filesystem::exists(uri)) throw std::invalid_argument("source does not exist: " + uri.string());
  std::ifstream in(uri);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw std::invalid_argument("cannot parse scene spec '" + uri.string() + "': " + e.what());
  }
  return std::make_unique<SceneSource>(scene_from_json(j));
}

}  // namespace motionclass
