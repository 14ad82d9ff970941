#include "motionclass/patches.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "motionclass/json_util.hpp"
#include "motionclass/png_io.hpp"

namespace motionclass {

RgbImage resample_square(const RgbImage& image, double x0, double y0, double extent, int side) {
  RgbImage out(side, side);
  const double scale = extent / side;
  const int w = image.width, h = image.height;
  for (int i = 0; i < side; ++i) {
    const double sy = std::clamp(y0 + (i + 0.5) * scale - 0.5, 0.0, static_cast<double>(h - 1));
    const int ya = static_cast<int>(sy);
    const int yb = std::min(ya + 1, h - 1);
    const double fy = sy - ya;
    for (int j = 0; j < side; ++j) {
      const double sx = std::clamp(x0 + (j + 0.5) * scale - 0.5, 0.0, static_cast<double>(w - 1));
      const int xa = static_cast<int>(sx);
      const int xb = std::min(xa + 1, w - 1);
      const double fx = sx - xa;
      for (int c = 0; c < 3; ++c) {
        const double top = (1.0 - fx) * image.at(xa, ya, c) + fx * image.at(xb, ya, c);
        const double bottom = (1.0 - fx) * image.at(xa, yb, c) + fx * image.at(xb, yb, c);
        out.at(j, i, c) = static_cast<std::uint8_t>(std::clamp(std::lround((1.0 - fy) * top + fy * bottom), 0L, 255L));
      }
    }
  }
  return out;
}

RgbImage extract_patch(const RgbImage& frame, const BoundingBox& box, int side) {
  if (side < 1) throw std::invalid_argument("extract_patch: side must be positive");
  if (!box.valid() || (box.width() <= 0.0 && box.height() <= 0.0))
    throw std::invalid_argument("extract_patch: degenerate box");
  if (box.x_max <= 0.0 || box.y_max <= 0.0 || box.x_min >= frame.width || box.y_min >= frame.height)
    throw std::invalid_argument("extract_patch: box lies entirely outside the frame");
  double extent = std::max(box.width(), box.height());
  extent = std::min(extent, static_cast<double>(std::min(frame.width, frame.height)));
  const Eigen::Vector2d c = box.center();
  const double x0 = std::clamp(c.x() - 0.5 * extent, 0.0, frame.width - extent);
  const double y0 = std::clamp(c.y() - 0.5 * extent, 0.0, frame.height - extent);
  return resample_square(frame, x0, y0, extent, side);
}

std::string PatchSequence::name() const {
  return "seq_" + std::to_string(instance_id) + "_" + std::to_string(split_index);
}

std::size_t PatchDataset::patch_count() const {
  std::size_t n = 0;
  for (const auto& s : sequences) n += s.size();
  return n;
}

double PatchDataset::mean_length() const {
  return sequences.empty() ? 0.0 : static_cast<double>(patch_count()) / sequences.size();
}

std::vector<std::pair<std::size_t, std::size_t>> split_runs(std::span<const Observation> observations,
                                                            int min_seq_len, bool drop_colliding) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t begin = 0;
  bool open = false;
  auto close = [&](std::size_t end) {
    if (open && static_cast<int>(end - begin) >= min_seq_len) runs.emplace_back(begin, end);
    open = false;
  };
  for (std::size_t i = 0; i < observations.size(); ++i) {
    const auto& o = observations[i];
    if (drop_colliding && o.colliding) {
      close(i);
      continue;
    }
    if (open && o.frame != observations[i - 1].frame + 1) close(i);
    if (!open) {
      begin = i;
      open = true;
    }
  }
  close(observations.size());
  return runs;
}

BuiltDataset build_dataset(const std::vector<TrackObservations>& tracks, const PatchParams& params) {
  BuiltDataset out;
  out.dataset.patch_size = params.size;
  out.dataset.min_seq_len = params.min_seq_len;
  for (const auto& track : tracks) {
    const auto runs = split_runs(track.observations, params.min_seq_len, params.drop_colliding);
    int k = 0;
    for (auto [begin, end] : runs) {
      PatchSequence seq;
      seq.instance_id = track.track_id;
      seq.split_index = k++;
      std::vector<int> truth;
      for (std::size_t i = begin; i < end; ++i) {
        const auto& o = track.observations[i];
        seq.frames.push_back(o.frame);
        seq.boxes.push_back(o.box);
        seq.patches.push_back(o.patch);
        truth.push_back(o.truth_class);
      }
      if (std::any_of(truth.begin(), truth.end(), [](int c) { return c >= 0; })) out.truth[seq.name()] = truth;
      out.dataset.sequences.push_back(std::move(seq));
    }
  }
  return out;
}

void check_invariants(const PatchDataset& dataset) {
  for (const auto& s : dataset.sequences) {
    const std::string who = "sequence " + s.name();
    if (static_cast<int>(s.size()) < dataset.min_seq_len) throw std::runtime_error(who + ": shorter than min_seq_len");
    if (s.patches.size() != s.size() || s.boxes.size() != s.size())
      throw std::runtime_error(who + ": frames, patches, and boxes differ in length");
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s.frames[i] != s.frames[i - 1] + 1) throw std::runtime_error(who + ": frame indices not consecutive");
    for (const auto& p : s.patches)
      if (p.width != dataset.patch_size || p.height != dataset.patch_size)
        throw std::runtime_error(who + ": patch size differs from " + std::to_string(dataset.patch_size));
  }
}

namespace {

std::string frame_file(int frame) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06d.png", frame);
  return name;
}

Json read_manifest(const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing dataset manifest: " + path.string());
  Json j = Json::parse(in);
  if (j.value("format", "") != "motionclass-patches" || j.value("version", 0) != 1)
    throw std::runtime_error("unsupported dataset manifest: " + path.string());
  return j;
}

}  // namespace

void write_dataset(const std::filesystem::path& dir, const PatchDataset& dataset, const TruthTable& truth) {
  check_invariants(dataset);
  std::filesystem::create_directories(dir);
  Json sequences = Json::array();
  for (const auto& s : dataset.sequences) {
    const auto seq_dir = dir / s.name();
    std::filesystem::create_directories(seq_dir);
    Json boxes = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
      write_png(seq_dir / frame_file(s.frames[i]), s.patches[i]);
      const auto& b = s.boxes[i];
      boxes.push_back({b.x_min, b.y_min, b.x_max, b.y_max});
    }
    Json entry = {{"name", s.name()},
                  {"instance_id", s.instance_id},
                  {"split", s.split_index},
                  {"frames", s.frames},
                  {"boxes", boxes}};
    if (auto it = truth.find(s.name()); it != truth.end()) entry["truth_classes"] = it->second;
    sequences.push_back(std::move(entry));
  }
  Json manifest = {{"format", "motionclass-patches"},
                   {"version", 1},
                   {"patch_size", dataset.patch_size},
                   {"min_seq_len", dataset.min_seq_len},
                   {"stats", {{"count", dataset.sequences.size()}, {"patches", dataset.patch_count()},
                              {"mean_length", dataset.mean_length()}}},
                   {"sequences", sequences}};
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(1) << '\n';
}

PatchDataset read_dataset(const std::filesystem::path& dir) {
  const Json j = read_manifest(dir);
  PatchDataset dataset;
  dataset.patch_size = j.at("patch_size").get<int>();
  dataset.min_seq_len = j.at("min_seq_len").get<int>();
  for (const auto& entry : j.at("sequences")) {
    PatchSequence s;
    s.instance_id = entry.at("instance_id").get<int>();
    s.split_index = entry.at("split").get<int>();
    s.frames = entry.at("frames").get<std::vector<int>>();
    for (const auto& b : entry.at("boxes"))
      s.boxes.push_back({b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(), b.at(3).get<double>()});
    const auto seq_dir = dir / entry.at("name").get<std::string>();
    for (int f : s.frames) s.patches.push_back(read_png(seq_dir / frame_file(f)));
    dataset.sequences.push_back(std::move(s));
  }
  check_invariants(dataset);
  return dataset;
}

TruthTable read_truth(const std::filesystem::path& dir) {
  const Json j = read_manifest(dir);
  TruthTable truth;
  for (const auto& entry : j.at("sequences")) {
    if (entry.contains("truth_classes"))
      truth[entry.at("name").get<std::string>()] = entry.at("truth_classes").get<std::vector<int>>();
  }
  return truth;
}

}  // namespace motionclass
