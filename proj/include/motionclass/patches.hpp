#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "motionclass/geometry.hpp"
#include "motionclass/image.hpp"

namespace motionclass {

struct PatchParams {
  int size = 64;                // S
  int min_seq_len = 3;
  bool drop_colliding = true;
  double box_margin = 0.25;     // relative growth of a track box before cropping

  bool operator==(const PatchParams&) const = default;
};

/// Square crop about the box centre (side = max(w, h)), shifted to lie inside the frame, resampled to side x side.
/// Throws std::invalid_argument for degenerate boxes or boxes entirely outside the frame.
RgbImage extract_patch(const RgbImage& frame, const BoundingBox& box, int side);

/// Bilinear resample of the square [x0, x0+extent) x [y0, y0+extent) to side x side.
RgbImage resample_square(const RgbImage& image, double x0, double y0, double extent, int side);

struct PatchSequence {
  int instance_id = 0;
  int split_index = 0;
  std::vector<int> frames;  // consecutive
  std::vector<RgbImage> patches;
  std::vector<BoundingBox> boxes;

  std::size_t size() const { return frames.size(); }
  std::string name() const;
};

/// Training-side dataset: carries no ground-truth fields.
struct PatchDataset {
  int patch_size = 64;
  int min_seq_len = 3;
  std::vector<PatchSequence> sequences;

  std::size_t patch_count() const;
  double mean_length() const;
};

/// Evaluation-only ground truth: sequence name -> per-patch class (-1 when unknown).
using TruthTable = std::map<std::string, std::vector<int>>;

/// One matched frame of a confirmed track.
struct Observation {
  int frame = 0;
  BoundingBox box;
  bool colliding = false;
  RgbImage patch;
  int truth_class = -1;
};

struct TrackObservations {
  int track_id = 0;
  std::vector<Observation> observations;  // increasing frame order
};

/// Maximal runs [begin, end) of consecutive frames, with colliding frames removed first when requested,
/// keeping runs of at least min_seq_len.
std::vector<std::pair<std::size_t, std::size_t>> split_runs(std::span<const Observation> observations,
                                                            int min_seq_len, bool drop_colliding);

struct BuiltDataset {
  PatchDataset dataset;
  TruthTable truth;
};

BuiltDataset build_dataset(const std::vector<TrackObservations>& tracks, const PatchParams& params);

/// Throws std::runtime_error when a sequence violates length, consecutiveness, or patch-size invariants.
void check_invariants(const PatchDataset& dataset);

/// `seq_<id>_<k>/frame_<n>.png` plus manifest.json. Truth is written when non-empty.
void write_dataset(const std::filesystem::path& dir, const PatchDataset& dataset, const TruthTable& truth = {});
PatchDataset read_dataset(const std::filesystem::path& dir);
TruthTable read_truth(const std::filesystem::path& dir);

}  // namespace motionclass
