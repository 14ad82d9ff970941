#include "motionclass/config.hpp"

#include <cstdlib>
#include <fstream>
#include <type_traits>
#include <vector>

namespace motionclass {
namespace {

template <typename F> void visit_fields(FlowParams& p, F&& f) {
  f("max_points", p.max_points);
  f("descriptor_side", p.descriptor_side);
  f("window_radius", p.window_radius);
  f("nms_radius", p.nms_radius);
  f("quality_level", p.quality_level);
  f("min_response", p.min_response);
  f("search_radius", p.search_radius);
  f("score_min", p.score_min);
}

template <typename F> void visit_fields(MotionParams& p, F&& f) {
  f("tau_static", p.tau_static);
  f("tau_dynamic", p.tau_dynamic);
  f("eps", p.eps);
  f("min_pts", p.min_pts);
  f("velocity_weight", p.velocity_weight);
}

template <typename F> void visit_fields(KalmanParams& p, F&& f) {
  f("p_init", p.p_init);
  f("p_velocity_scale", p.p_velocity_scale);
  f("q_position", p.q_position);
  f("q_velocity", p.q_velocity);
  f("q_area_velocity", p.q_area_velocity);
  f("r_position", p.r_position);
  f("r_shape", p.r_shape);
}

template <typename F> void visit_fields(TrackerParams& p, F&& f) {
  f("iou_min", p.iou_min);
  f("max_age", p.max_age);
  f("min_hits", p.min_hits);
  f("collision_eps", p.collision_eps);
  f("kalman", p.kalman);
}

template <typename F> void visit_fields(SegmentParams& p, F&& f) {
  f("components", p.components);
  f("alpha", p.alpha);
  f("lambda", p.lambda);
  f("background_ratio", p.background_ratio);
  f("var_min", p.var_min);
  f("var_max", p.var_max);
  f("var_init", p.var_init);
}

template <typename F> void visit_fields(PatchParams& p, F&& f) {
  f("size", p.size);
  f("min_seq_len", p.min_seq_len);
  f("drop_colliding", p.drop_colliding);
  f("box_margin", p.box_margin);
}

template <typename F> void visit_fields(ExtractConfig& p, F&& f) {
  f("detection_padding", p.detection_padding);
  f("truth_iou_min", p.truth_iou_min);
  f("dump_masks", p.dump_masks);
  f("dump_flow", p.dump_flow);
}

template <typename F> void visit_fields(AugmentParams& p, F&& f) {
  f("enabled", p.enabled);
  f("crop_scale_min", p.crop_scale_min);
  f("eval_crop_scale", p.eval_crop_scale);
  f("flip_prob", p.flip_prob);
}

template <typename F> void visit_fields(ClusterParams& p, F&& f) {
  f("window", p.window);
  f("clusters", p.clusters);
  f("aux_clusters", p.aux_clusters);
  f("epochs", p.epochs);
  f("batch", p.batch);
  f("lr", p.lr);
  f("pairs_per_sequence", p.pairs_per_sequence);
  f("mode", p.mode);
  f("augment", p.augment);
  f("conv_channels", p.conv_channels);
}

template <typename F> void visit_fields(ClassifierParams& p, F&& f) {
  f("epochs", p.epochs);
  f("batch", p.batch);
  f("lr", p.lr);
  f("augment", p.augment);
  f("conv_channels", p.conv_channels);
}

template <typename F> void visit_fields(EvaluateConfig& p, F&& f) {
  f("top_m", p.top_m);
  f("contact_sheet", p.contact_sheet);
}

template <typename T>
concept Section = requires(T& t) { visit_fields(t, [](const char*, auto&) {}); };

Json mode_json(PairingMode m) { return m == PairingMode::kTemporal ? "temporal" : "static"; }

PairingMode mode_from(const Json& j, const std::string& context) {
  const auto s = j.get<std::string>();
  if (s == "temporal") return PairingMode::kTemporal;
  if (s == "static") return PairingMode::kStatic;
  throw std::invalid_argument(context + ": mode must be 'temporal' or 'static', got '" + s + "'");
}

template <Section T>
Json write(const T& section) {
  Json j = Json::object();
  visit_fields(const_cast<T&>(section), [&](const char* key, auto& value) {
    using V = std::decay_t<decltype(value)>;
    if constexpr (Section<V>) j[key] = write(value);
    else if constexpr (std::is_same_v<V, PairingMode>) j[key] = mode_json(value);
    else j[key] = value;
  });
  return j;
}

template <Section T>
void read(const Json& j, T& section, const std::string& context) {
  if (!j.is_object()) throw std::invalid_argument(context + ": expected a JSON object");
  std::vector<std::string> known;
  visit_fields(section, [&](const char* key, auto&) { known.emplace_back(key); });
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw std::invalid_argument(context + ": unknown key '" + item.key() + "'");
  visit_fields(section, [&](const char* key, auto& value) {
    using V = std::decay_t<decltype(value)>;
    const auto it = j.find(key);
    if (it == j.end()) return;
    const std::string where = context + "." + key;
    try {
      if constexpr (Section<V>) read(*it, value, where);
      else if constexpr (std::is_same_v<V, PairingMode>) value = mode_from(*it, where);
      else value = it->template get<V>();
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  });
}

}  // namespace

StageSeeds derive_seeds(std::uint64_t master) {
  return {master, master + 1000, master + 2000, master + 3000, master + 4000};
}

Json to_json(const PipelineConfig& c) {
  return {{"seed", c.seed},
          {"input",
           {{"source", c.input.source},
            {"heldout_source", c.input.heldout_source},
            {"synthetic", to_json(c.input.synthetic)}}},
          {"flow", write(c.flow)},
          {"motion", write(c.motion)},
          {"tracker", write(c.tracker)},
          {"segment", write(c.segment)},
          {"patches", write(c.patches)},
          {"extract", write(c.extract)},
          {"cluster", write(c.cluster)},
          {"classifier", write(c.classifier)},
          {"evaluate", write(c.evaluate)}};
}

PipelineConfig config_from_json(const Json& j) {
  reject_unknown_keys(j,
                      {"seed", "input", "flow", "motion", "tracker", "segment", "patches", "extract", "cluster",
                       "classifier", "evaluate"},
                      "config");
  PipelineConfig c;
  read_optional(j, "seed", c.seed);
  if (auto it = j.find("input"); it != j.end()) {
    reject_unknown_keys(*it, {"source", "heldout_source", "synthetic"}, "config.input");
    read_optional(*it, "source", c.input.source);
    read_optional(*it, "heldout_source", c.input.heldout_source);
    if (auto s = it->find("synthetic"); s != it->end()) c.input.synthetic = generator_params_from_json(*s);
  }
  auto section = [&](const char* key, auto& target) {
    if (auto it = j.find(key); it != j.end()) read(*it, target, std::string("config.") + key);
  };
  section("flow", c.flow);
  section("motion", c.motion);
  section("tracker", c.tracker);
  section("segment", c.segment);
  section("patches", c.patches);
  section("extract", c.extract);
  section("cluster", c.cluster);
  section("classifier", c.classifier);
  section("evaluate", c.evaluate);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config: " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

std::optional<std::filesystem::path> resolve_config_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) return std::filesystem::path(explicit_path);
  if (const char* env = std::getenv("MOTIONCLASS_CONFIG"); env != nullptr && *env != '\0')
    return std::filesystem::path(env);
  return std::nullopt;
}

}  // namespace motionclass
