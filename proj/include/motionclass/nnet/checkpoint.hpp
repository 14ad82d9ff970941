#pragma once

#include <filesystem>

#include "motionclass/nnet/network.hpp"

namespace motionclass::nn {

/// Checkpoint layout, version 1:
///   bytes 0-3   "MCNN"
///   bytes 4-7   format version, uint32 little-endian
///   bytes 8-11  header length H, uint32 little-endian
///   next H      UTF-8 JSON: {"arch", "parameters": [{"name", "shape"}], "metadata"}
///   remainder   parameter values in header order, float32 little-endian
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const std::filesystem::path& path, Model<float>& model, const Json& metadata = Json::object());

struct LoadedModel {
  Model<float> model;
  Json metadata;
};

LoadedModel load_checkpoint(const std::filesystem::path& path);

}  // namespace motionclass::nn
