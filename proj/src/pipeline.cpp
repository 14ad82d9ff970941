#include "motionclass/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "motionclass/classifier.hpp"
#include "motionclass/evaluation.hpp"
#include "motionclass/motion.hpp"
#include "motionclass/nnet/checkpoint.hpp"
#include "motionclass/overlay.hpp"
#include "motionclass/png_io.hpp"
#include "motionclass/segment.hpp"
#include "motionclass/tracker.hpp"

namespace motionclass {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Json box_json(const BoundingBox& b) { return {b.x_min, b.y_min, b.x_max, b.y_max}; }

BoundingBox box_from(const Json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(), j.at(3).get<double>()};
}

int truth_class(const std::vector<TruthInstance>* truth, const BoundingBox& box, double iou_min) {
  if (truth == nullptr) return -1;
  int best = -1;
  double best_iou = iou_min;
  for (const auto& t : *truth) {
    const double o = iou(t.box, box);
    if (o >= best_iou) {
      best_iou = o;
      best = t.class_id;
    }
  }
  return best;
}

std::string frame_name(const char* prefix, int frame) {
  char name[48];
  std::snprintf(name, sizeof(name), "%s_%06d.png", prefix, frame);
  return name;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return Json::parse(in);
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& l : lines) out << l << '\n';
}

void require(const fs::path& path, Stage producer) {
  if (!fs::exists(path))
    throw std::runtime_error("missing " + path.string() + "; run the '" + stage_name(producer) + "' stage first");
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  return 0.5 * (hi + *std::max_element(values.begin(), values.begin() + mid));
}

ChainResult run_detection_chain(FrameSource& source, const PipelineConfig& config, const ChainOptions& options) {
  ChainResult result;
  Tracker tracker(config.tracker);
  std::unique_ptr<BackgroundModel> background;
  std::vector<InterestPoint> previous;
  std::map<int, std::vector<Observation>> pending;  // track id -> matched observations
  std::vector<TrackObservations> finished;

  auto retire = [&](const Track& t) {
    auto it = pending.find(t.id);
    if (it == pending.end()) return;
    if (t.ever_confirmed) finished.push_back({t.id, std::move(it->second)});
    pending.erase(it);
  };

  while (auto frame = source.next()) {
    FrameTiming timing;
    auto t0 = Clock::now();
    auto points = detect_points(frame->gray, config.flow.max_points, config.flow);
    std::vector<FlowPoint> flow;
    if (!previous.empty()) flow = match_flow(previous, points, config.flow.search_radius, config.flow.score_min);
    previous = std::move(points);
    timing.flow = seconds_since(t0);
    if (options.on_flow) options.on_flow(frame->index, flow);

    t0 = Clock::now();
    const MotionSplit split = split_motion(flow, config.motion.tau_static, config.motion.tau_dynamic);
    timing.separation = seconds_since(t0);

    t0 = Clock::now();
    const auto detections = cluster_dynamic(split.dynamic_points, config.motion.eps, config.motion.min_pts,
                                            config.motion.velocity_weight);
    timing.distinction = seconds_since(t0);

    t0 = Clock::now();
    std::vector<BoundingBox> boxes;
    boxes.reserve(detections.size());
    for (const auto& d : detections) boxes.push_back(d.box.expanded(config.extract.detection_padding));
    TrackerStep step = tracker.step(boxes, frame->index);
    timing.tracking = seconds_since(t0);

    t0 = Clock::now();
    if (!background)
      background = std::make_unique<BackgroundModel>(frame->gray.cols(), frame->gray.rows(), config.segment);
    const Mask foreground = background->update_and_classify(frame->gray);
    timing.segmentation = seconds_since(t0);
    if (options.on_mask) options.on_mask(frame->index, foreground);
    result.timing.push_back(timing);

    if (options.keep_logs) {
      Json dets = Json::array();
      for (std::size_t i = 0; i < detections.size(); ++i) {
        dets.push_back({{"box", box_json(boxes[i])},
                        {"velocity", {detections[i].velocity.x(), detections[i].velocity.y()}},
                        {"points", detections[i].members.size()}});
      }
      result.detection_lines.push_back(Json{{"frame", frame->index}, {"detections", dets}}.dump());
      for (const auto& t : step.tracks) {
        result.track_lines.push_back(Json{{"frame", frame->index},
                                          {"id", t.id},
                                          {"box", box_json(t.box)},
                                          {"matched", t.matched},
                                          {"confirmed", t.confirmed},
                                          {"colliding", t.colliding}}
                                         .dump());
      }
    }

    for (const auto& t : tracker.tracks()) {
      if (!t.matched) continue;
      const TrackRecord& rec = t.history.back();
      const BoundingBox crop = rec.box.expanded(config.patches.box_margin * 0.5 * std::max(rec.box.width(), rec.box.height()));
      Observation o;
      o.frame = rec.frame;
      o.box = rec.box;
      o.colliding = rec.colliding;
      try {
        o.patch = extract_patch(frame->color, crop, config.patches.size);
      } catch (const std::invalid_argument&) {
        continue;
      }
      o.truth_class = truth_class(source.truth(), rec.box, config.extract.truth_iou_min);
      pending[t.id].push_back(std::move(o));
    }
    for (const auto& t : step.retired) retire(t);
    ++result.frames;
  }
  for (const auto& t : tracker.finish()) retire(t);

  std::sort(finished.begin(), finished.end(),
            [](const TrackObservations& a, const TrackObservations& b) { return a.track_id < b.track_id; });
  result.built = build_dataset(finished, config.patches);
  return result;
}

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::kExtract: return "extract";
    case Stage::kCluster: return "cluster";
    case Stage::kClassify: return "classify";
    case Stage::kEvaluate: return "evaluate";
    case Stage::kOverlay: return "overlay";
  }
  return "?";
}

std::vector<Stage> parse_stages(const std::string& list) {
  const std::vector<Stage> all{Stage::kExtract, Stage::kCluster, Stage::kClassify, Stage::kEvaluate, Stage::kOverlay};
  if (list == "run" || list == "all") return all;
  std::vector<Stage> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto it = std::find_if(all.begin(), all.end(), [&](Stage s) { return item == stage_name(s); });
    if (it == all.end()) throw std::invalid_argument("unknown stage '" + item + "'");
    out.push_back(*it);
  }
  if (out.empty()) throw std::invalid_argument("no stages given");
  return out;
}

std::unique_ptr<FrameSource> make_source(const PipelineConfig& config, bool heldout) {
  const std::string& path = heldout ? config.input.heldout_source : config.input.source;
  if (!path.empty()) return open_source(path);
  const StageSeeds seeds = derive_seeds(config.seed);
  return std::make_unique<SceneSource>(generate_scene(config.input.synthetic, heldout ? seeds.heldout_scene : seeds.scene));
}

void render_scene(const PipelineConfig& config, bool heldout, const fs::path& out) {
  const StageSeeds seeds = derive_seeds(config.seed);
  const SyntheticScene scene = generate_scene(config.input.synthetic, heldout ? seeds.heldout_scene : seeds.scene);
  fs::create_directories(out);
  write_json(out / "scene.json", to_json(scene));
  dump_scene(SceneRenderer(scene), out);
}

namespace {

Json timing_rows(const std::array<double, 6>& rows) {
  Json arr = Json::array();
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    arr.push_back({{"name", kTimingRows[i]}, {"seconds", rows[i]}});
    total += rows[i];
  }
  arr.push_back({{"name", "Total"}, {"seconds", total}});
  return arr;
}

std::array<double, 6> read_timing(const fs::path& path) {
  std::array<double, 6> rows{};
  if (!fs::exists(path)) return rows;
  const Json j = read_json(path);
  for (const auto& r : j.at("rows")) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (r.at("name") == kTimingRows[i]) rows[i] = r.at("seconds").get<double>();
  }
  return rows;
}

void write_timing(const fs::path& path, const std::array<double, 6>& rows, Json extra) {
  Json j = fs::exists(path) ? read_json(path) : Json::object();
  j["unit"] = "median seconds per frame (classification: per patch)";
  j["rows"] = timing_rows(rows);
  for (const auto& item : extra.items()) j[item.key()] = item.value();
  write_json(path, j);
}

void stage_extract(const PipelineConfig& config, const fs::path& out) {
  fs::create_directories(out);
  write_json(out / "config.json", to_json(config));
  const StageSeeds seeds = derive_seeds(config.seed);
  if (config.input.source.empty())
    write_json(out / "scene.json", to_json(generate_scene(config.input.synthetic, seeds.scene)));
  if (config.input.heldout_source.empty())
    write_json(out / "heldout_scene.json", to_json(generate_scene(config.input.synthetic, seeds.heldout_scene)));

  ChainOptions options;
  const fs::path mask_dir = out / "masks";
  const fs::path flow_dir = out / "flow";
  if (config.extract.dump_masks) {
    fs::remove_all(mask_dir);
    fs::create_directories(mask_dir);
    options.on_mask = [&](int frame, const Mask& m) { write_mask_png(mask_dir / frame_name("mask", frame), m); };
  }
  if (config.extract.dump_flow) {
    fs::remove_all(flow_dir);
    fs::create_directories(flow_dir);
    options.on_flow = [&](int frame, const std::vector<FlowPoint>& f) {
      char name[32];
      std::snprintf(name, sizeof(name), "flow_%06d.csv", frame);
      write_flow_csv(flow_dir / name, f);
    };
  }
  auto source = make_source(config, false);
  ChainResult train = run_detection_chain(*source, config, options);
  check_invariants(train.built.dataset);
  fs::remove_all(out / "dataset");
  write_dataset(out / "dataset", train.built.dataset, train.built.truth);
  write_lines(out / "tracks.jsonl", train.track_lines);
  write_lines(out / "detections.jsonl", train.detection_lines);

  auto heldout_source = make_source(config, true);
  ChainOptions quiet;
  quiet.keep_logs = false;
  ChainResult heldout = run_detection_chain(*heldout_source, config, quiet);
  check_invariants(heldout.built.dataset);
  fs::remove_all(out / "heldout");
  write_dataset(out / "heldout", heldout.built.dataset, heldout.built.truth);

  std::array<std::vector<double>, 5> samples;
  std::vector<double> chain;
  for (const auto& t : train.timing) {
    samples[0].push_back(t.flow);
    samples[1].push_back(t.separation);
    samples[2].push_back(t.distinction);
    samples[3].push_back(t.tracking);
    samples[4].push_back(t.segmentation);
    chain.push_back(t.chain());
  }
  std::array<double, 6> rows = read_timing(out / "timing.json");
  for (std::size_t i = 0; i < samples.size(); ++i) rows[i] = median(samples[i]);
  write_timing(out / "timing.json", rows, {{"frames", train.frames}, {"detection_chain_median", median(chain)}});

  write_json(out / "extract_summary.json",
             {{"frames", train.frames},
              {"sequences", train.built.dataset.sequences.size()},
              {"patches", train.built.dataset.patch_count()},
              {"mean_length", train.built.dataset.mean_length()},
              {"heldout_frames", heldout.frames},
              {"heldout_sequences", heldout.built.dataset.sequences.size()},
              {"heldout_patches", heldout.built.dataset.patch_count()}});
}

const char* mode_name(PairingMode m) { return m == PairingMode::kTemporal ? "temporal" : "static"; }

void stage_cluster(const PipelineConfig& config, const fs::path& out) {
  require(out / "dataset" / "manifest.json", Stage::kExtract);
  const PatchDataset dataset = read_dataset(out / "dataset");
  check_invariants(dataset);
  const StageSeeds seeds = derive_seeds(config.seed);
  ClusteringResult result = train_clustering(dataset, config.cluster, seeds.cluster);
  const auto assignments = pseudo_label(result.model, dataset);
  nn::save_checkpoint(out / "cluster_model.mcnn", result.model.model,
                      {{"window", result.model.window}, {"mode", mode_name(result.model.mode)}});
  write_json(out / "assignments.json", to_json(assignments));
  Json trace = Json::array();
  for (const auto& e : result.trace) trace.push_back({{"head", e.head == 0 ? "main" : "aux"}, {"loss", e.mean_loss}});
  write_json(out / "cluster_trace.json", {{"epochs", trace}});
}

struct PatchRef {
  std::string sequence;
  int instance_id;
  int frame;
  const RgbImage* patch;
};

std::vector<PatchRef> patch_refs(const PatchDataset& d) {
  std::vector<PatchRef> out;
  for (const auto& s : d.sequences)
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back({s.name(), s.instance_id, s.frames[i], &s.patches[i]});
  return out;
}

Json predictions_json(PatchClassifier& classifier, const PatchDataset& dataset) {
  const auto refs = patch_refs(dataset);
  std::vector<const RgbImage*> patches;
  for (const auto& r : refs) patches.push_back(r.patch);
  const auto preds = predict(classifier, std::span<const RgbImage* const>(patches));
  Json arr = Json::array();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    arr.push_back({{"sequence", refs[i].sequence},
                   {"track", refs[i].instance_id},
                   {"frame", refs[i].frame},
                   {"cluster", preds[i].cluster},
                   {"posterior", std::vector<double>(preds[i].posterior.data(),
                                                     preds[i].posterior.data() + preds[i].posterior.size())}});
  }
  return arr;
}

void stage_classify(const PipelineConfig& config, const fs::path& out) {
  require(out / "dataset" / "manifest.json", Stage::kExtract);
  require(out / "heldout" / "manifest.json", Stage::kExtract);
  require(out / "assignments.json", Stage::kCluster);
  const PatchDataset dataset = read_dataset(out / "dataset");
  const PatchDataset heldout = read_dataset(out / "heldout");
  check_invariants(dataset);
  check_invariants(heldout);
  const auto assignments = assignments_from_json(read_json(out / "assignments.json"));
  const auto examples = pseudo_labeled_patches(dataset, assignments);
  const StageSeeds seeds = derive_seeds(config.seed);
  ClassifierResult trained =
      train_classifier(std::span<const PseudoLabeledPatch>(examples), config.cluster.clusters, config.classifier,
                       seeds.classifier);
  nn::save_checkpoint(out / "classifier.mcnn", trained.classifier.model, {{"classes", config.cluster.clusters}});

  write_json(out / "predictions.json", {{"classes", config.cluster.clusters},
                                        {"heldout", predictions_json(trained.classifier, heldout)},
                                        {"train", predictions_json(trained.classifier, dataset)},
                                        {"loss_trace", trained.loss_trace}});

  std::vector<double> latency;
  const auto refs = patch_refs(heldout.sequences.empty() ? dataset : heldout);
  for (std::size_t i = 0; i < refs.size() && i < 200; ++i) {
    const auto t0 = Clock::now();
    predict(trained.classifier, *refs[i].patch);
    latency.push_back(seconds_since(t0));
  }
  std::array<double, 6> rows = read_timing(out / "timing.json");
  rows[5] = median(latency);
  write_timing(out / "timing.json", rows, {{"classification_patch_median", rows[5]}});
}

RgbImage contact_sheet(const std::vector<std::vector<const RgbImage*>>& rows, int side, int columns) {
  RgbImage sheet(std::max(1, columns) * side, std::max<int>(1, static_cast<int>(rows.size())) * side, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const RgbImage& p = *rows[r][c];
      for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
          for (int ch = 0; ch < 3; ++ch)
            sheet.at(static_cast<int>(c) * side + x, static_cast<int>(r) * side + y, ch) = p.at(x, y, ch);
    }
  }
  return sheet;
}

void stage_evaluate(const PipelineConfig& config, const fs::path& out) {
  require(out / "heldout" / "manifest.json", Stage::kExtract);
  require(out / "predictions.json", Stage::kClassify);
  const Json preds = read_json(out / "predictions.json");
  const TruthTable truth = read_truth(out / "heldout");
  const int clusters = preds.at("classes").get<int>();

  std::map<std::pair<std::string, int>, int> frame_truth;  // (sequence, frame) -> class
  int classes = 0;
  {
    const PatchDataset heldout = read_dataset(out / "heldout");
    for (const auto& s : heldout.sequences) {
      const auto it = truth.find(s.name());
      if (it == truth.end()) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        frame_truth[{s.name(), s.frames[i]}] = it->second.at(i);
        classes = std::max(classes, it->second.at(i) + 1);
      }
    }
  }
  if (classes == 0) throw std::runtime_error("evaluate: held-out dataset carries no ground-truth classes");

  std::vector<LabeledPrediction> examples;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> posterior_rows;
  for (const auto& p : preds.at("heldout")) {
    const auto it = frame_truth.find({p.at("sequence").get<std::string>(), p.at("frame").get<int>()});
    if (it == frame_truth.end() || it->second < 0) continue;
    examples.push_back({static_cast<int>(examples.size()), p.at("cluster").get<int>(), it->second});
    ids.push_back(p.at("sequence").get<std::string>() + "/" + frame_name("frame", p.at("frame").get<int>()));
    posterior_rows.push_back(p.at("posterior").get<std::vector<double>>());
  }
  if (examples.empty()) throw std::runtime_error("evaluate: no held-out patch has a ground-truth class");

  std::vector<int> cl, tr;
  for (const auto& e : examples) {
    cl.push_back(e.cluster);
    tr.push_back(e.truth);
  }
  const ConfusionMatrix conf = confusion(cl, tr, clusters, classes);
  const AccResult plain = acc(conf);
  const StageSeeds seeds = derive_seeds(config.seed);
  const AccResult balanced = balanced_acc(examples, clusters, classes, seeds.evaluate);

  Eigen::MatrixXd posteriors(static_cast<Eigen::Index>(examples.size()), clusters);
  for (std::size_t i = 0; i < posterior_rows.size(); ++i)
    for (int k = 0; k < clusters; ++k) posteriors(static_cast<Eigen::Index>(i), k) = posterior_rows[i].at(k);
  const ClusterReport report = cluster_report(examples, posteriors, clusters, classes, config.evaluate.top_m);

  Json top = Json::array();
  for (const auto& row : report.top) {
    Json names = Json::array();
    for (int id : row) names.push_back(ids[id]);
    top.push_back(names);
  }

  // Pseudo-label quality against per-sequence majority truth of the training stream (diagnostic only).
  Json pseudo = nullptr;
  if (fs::exists(out / "assignments.json")) {
    const TruthTable train_truth = read_truth(out / "dataset");
    std::vector<int> sc, st;
    for (const auto& a : assignments_from_json(read_json(out / "assignments.json"))) {
      const auto it = train_truth.find(a.sequence);
      if (it == train_truth.end()) continue;
      std::map<int, int> votes;
      for (int c : it->second)
        if (c >= 0 && c < classes) ++votes[c];
      if (votes.empty()) continue;
      const auto best = std::max_element(votes.begin(), votes.end(),
                                         [](const auto& a, const auto& b) { return a.second < b.second; });
      if (a.cluster >= clusters) continue;
      sc.push_back(a.cluster);
      st.push_back(best->first);
    }
    if (!sc.empty()) {
      const auto seq_conf = confusion(sc, st, clusters, classes);
      pseudo = {{"sequences", sc.size()}, {"acc", acc(seq_conf).score}, {"confusion", to_json(seq_conf)}};
    }
  }

  write_json(out / "report.json", {{"evaluated_patches", examples.size()},
                                   {"clusters", clusters},
                                   {"classes", classes},
                                   {"balanced_acc", balanced.score},
                                   {"acc", plain.score},
                                   {"mapping", balanced.mapping},
                                   {"confusion", to_json(conf)},
                                   {"histograms", to_json(report.histogram)},
                                   {"top", top},
                                   {"pseudo_labels", pseudo}});

  if (config.evaluate.contact_sheet) {
    const PatchDataset heldout = read_dataset(out / "heldout");
    std::map<std::string, const RgbImage*> by_id;
    for (const auto& s : heldout.sequences)
      for (std::size_t i = 0; i < s.size(); ++i) by_id[s.name() + "/" + frame_name("frame", s.frames[i])] = &s.patches[i];
    std::vector<std::vector<const RgbImage*>> rows;
    for (const auto& row : report.top) {
      std::vector<const RgbImage*> r;
      for (int id : row) r.push_back(by_id.at(ids[id]));
      rows.push_back(std::move(r));
    }
    write_png(out / "contact_sheet.png", contact_sheet(rows, heldout.patch_size, config.evaluate.top_m));
  }
}

void stage_overlay(const PipelineConfig& config, const fs::path& out) {
  require(out / "tracks.jsonl", Stage::kExtract);
  require(out / "predictions.json", Stage::kClassify);
  const bool masks = config.extract.dump_masks;
  if (masks) require(out / "masks", Stage::kExtract);

  std::map<int, std::vector<std::pair<int, BoundingBox>>> tracks_by_frame;  // frame -> (id, box)
  {
    std::ifstream in(out / "tracks.jsonl");
    std::string line;
    while (std::getline(in, line)) {
      const Json j = Json::parse(line);
      if (!j.at("confirmed").get<bool>()) continue;
      tracks_by_frame[j.at("frame").get<int>()].push_back({j.at("id").get<int>(), box_from(j.at("box"))});
    }
  }
  std::map<std::pair<int, int>, int> cluster_of;  // (track, frame) -> predicted cluster
  std::map<int, std::map<int, int>> track_votes;
  for (const auto& p : read_json(out / "predictions.json").at("train")) {
    const int track = p.at("track").get<int>();
    const int cluster = p.at("cluster").get<int>();
    cluster_of[{track, p.at("frame").get<int>()}] = cluster;
    ++track_votes[track][cluster];
  }

  auto source = make_source(config, false);
  if (masks) {
    int mask_files = 0;
    for (const auto& e : fs::directory_iterator(out / "masks")) mask_files += e.path().extension() == ".png";
    if (mask_files != source->frame_count())
      throw std::runtime_error("overlay: " + std::to_string(mask_files) + " masks for " +
                               std::to_string(source->frame_count()) + " frames; rerun 'extract'");
  }
  const fs::path dir = out / "overlay";
  fs::remove_all(dir);
  fs::create_directories(dir);
  while (auto frame = source->next()) {
    std::vector<OverlayItem> items;
    Mask fg;
    if (masks) fg = read_mask_png(out / "masks" / frame_name("mask", frame->index));
    for (const auto& [id, box] : tracks_by_frame[frame->index]) {
      OverlayItem item;
      item.box = box;
      if (masks) item.mask = crop_to_box(instance_mask(fg, box), box);
      if (auto it = cluster_of.find({id, frame->index}); it != cluster_of.end()) {
        item.cluster = it->second;
      } else if (auto v = track_votes.find(id); v != track_votes.end()) {
        item.cluster = std::max_element(v->second.begin(), v->second.end(), [](const auto& a, const auto& b) {
                         return a.second < b.second;
                       })->first;
      }
      items.push_back(std::move(item));
    }
    write_png(dir / frame_name("frame", frame->index), render_overlay(frame->color, items));
  }
}

}  // namespace

void run_stage(Stage stage, const PipelineConfig& config, const fs::path& out) {
  switch (stage) {
    case Stage::kExtract: stage_extract(config, out); break;
    case Stage::kCluster: stage_cluster(config, out); break;
    case Stage::kClassify: stage_classify(config, out); break;
    case Stage::kEvaluate: stage_evaluate(config, out); break;
    case Stage::kOverlay: stage_overlay(config, out); break;
  }
}

void run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages, const fs::path& out) {
  for (Stage s : stages) run_stage(s, config, out);
}

}  // namespace motionclass
