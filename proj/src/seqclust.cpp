#include "motionclass/seqclust.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "motionclass/nnet/adam.hpp"

namespace motionclass {

CropSpec draw_crop(int side, const AugmentParams& params, std::mt19937_64& rng) {
  CropSpec crop;
  if (!params.enabled) {
    crop.extent = side * params.eval_crop_scale;
    crop.x0 = crop.y0 = 0.5 * (side - crop.extent);
    return crop;
  }
  std::uniform_real_distribution<double> scale(params.crop_scale_min, 1.0);
  crop.extent = side * scale(rng);
  std::uniform_real_distribution<double> offset(0.0, side - crop.extent);
  crop.x0 = offset(rng);
  crop.y0 = offset(rng);
  crop.flip = std::bernoulli_distribution(params.flip_prob)(rng);
  return crop;
}

Plane<float> patch_gray(const RgbImage& patch) { return to_gray(patch) / 255.0f; }

Plane<float> apply_crop(const Plane<float>& plane, const CropSpec& crop) {
  const auto side = plane.cols();
  if (crop.extent == static_cast<double>(side) && crop.x0 == 0.0 && crop.y0 == 0.0 && !crop.flip) return plane;
  Plane<float> out(plane.rows(), side);
  const double step = crop.extent / static_cast<double>(side);
  for (Eigen::Index j = 0; j < out.rows(); ++j) {
    const double sy = crop.y0 + (j + 0.5) * step - 0.5;
    for (Eigen::Index i = 0; i < side; ++i) {
      const Eigen::Index col = crop.flip ? side - 1 - i : i;
      const double sx = crop.x0 + (col + 0.5) * step - 0.5;
      out(j, i) = sample_bilinear(plane, sx, sy);
    }
  }
  return out;
}

namespace {

Plane<float> sobel(const Plane<float>& p, bool horizontal) {
  const auto h = p.rows();
  const auto w = p.cols();
  auto at = [&](Eigen::Index y, Eigen::Index x) {
    return p(std::clamp<Eigen::Index>(y, 0, h - 1), std::clamp<Eigen::Index>(x, 0, w - 1));
  };
  Plane<float> out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      if (horizontal) {
        out(y, x) = (at(y - 1, x + 1) + 2 * at(y, x + 1) + at(y + 1, x + 1)) -
                    (at(y - 1, x - 1) + 2 * at(y, x - 1) + at(y + 1, x - 1));
      } else {
        out(y, x) = (at(y + 1, x - 1) + 2 * at(y + 1, x) + at(y + 1, x + 1)) -
                    (at(y - 1, x - 1) + 2 * at(y - 1, x) + at(y - 1, x + 1));
      }
    }
  }
  return out;
}

}  // namespace

Plane<float> sobel_x(const Plane<float>& plane) { return sobel(plane, true); }
Plane<float> sobel_y(const Plane<float>& plane) { return sobel(plane, false); }

std::pair<SubSequence, SubSequence> sample_pair(const PatchSequence& seq, int window, std::mt19937_64& rng) {
  const int n = static_cast<int>(seq.size());
  if (window < 1 || n < window)
    throw std::invalid_argument("sample_pair: sequence " + seq.name() + " has " + std::to_string(n) +
                                " patches, window needs " + std::to_string(window));
  std::uniform_int_distribution<int> start(0, n - window);
  const int a = start(rng);
  const int b = start(rng);
  return {SubSequence{&seq, a, window}, SubSequence{&seq, b, window}};
}

nn::Tensor<float> encode(std::span<const RgbImage> patches, const CropSpec& crop) {
  if (patches.empty()) throw std::invalid_argument("encode: no patches");
  const int side = patches.front().width;
  const int l = static_cast<int>(patches.size());
  nn::Tensor<float> out({2 * l, side, side});
  float* dst = out.data();
  const std::size_t plane = static_cast<std::size_t>(side) * side;
  for (int k = 0; k < l; ++k) {
    if (patches[k].width != side || patches[k].height != side)
      throw std::invalid_argument("encode: patches must share one square size");
    const Plane<float> g = apply_crop(patch_gray(patches[k]), crop);
    const Plane<float> dx = sobel_x(g);
    const Plane<float> dy = sobel_y(g);
    std::copy(dx.data(), dx.data() + plane, dst + (2 * k) * plane);
    std::copy(dy.data(), dy.data() + plane, dst + (2 * k + 1) * plane);
  }
  return out;
}

nn::Tensor<float> encode(std::span<const RgbImage> patches, const AugmentParams& aug, std::mt19937_64& rng) {
  if (patches.empty()) throw std::invalid_argument("encode: no patches");
  return encode(patches, draw_crop(patches.front().width, aug, rng));
}

std::vector<double> ClusteringResult::head_trace(int head) const {
  std::vector<double> out;
  for (const auto& e : trace)
    if (e.head == head) out.push_back(e.mean_loss);
  return out;
}

namespace {

/// L patches forming one encoder input.
std::vector<RgbImage> window_patches(const PatchSequence& seq, int start, int window, PairingMode mode) {
  if (mode == PairingMode::kStatic) return std::vector<RgbImage>(window, seq.patches.at(start));
  return {seq.patches.begin() + start, seq.patches.begin() + start + window};
}

struct PairRef {
  std::size_t sequence;
  int a;
  int b;
};

}  // namespace

ClusteringResult train_clustering(const PatchDataset& dataset, const ClusterParams& params, std::uint64_t seed,
                                  const std::function<void(int, ClusteringModel&)>& on_epoch) {
  if (params.clusters < 2) throw std::invalid_argument("clustering: C must be at least 2");
  if (params.aux_clusters < 2) throw std::invalid_argument("clustering: auxiliary head needs at least 2 clusters");
  if (params.window < 1) throw std::invalid_argument("clustering: window must be positive");
  if (dataset.sequences.empty()) throw std::invalid_argument("clustering: dataset has no sequences");
  for (const auto& seq : dataset.sequences)
    if (static_cast<int>(seq.size()) < params.window)
      throw std::invalid_argument("clustering: sequence " + seq.name() + " is shorter than window " +
                                  std::to_string(params.window));

  nn::ArchSpec arch;
  arch.in_channels = 2 * params.window;
  arch.input_size = dataset.patch_size;
  arch.conv_channels = params.conv_channels;
  arch.head_sizes = {params.clusters, params.aux_clusters};

  std::mt19937_64 rng(seed);
  ClusteringResult result{ClusteringModel{nn::Model<float>(arch, seed ^ 0x5eedULL), params.window, params.mode,
                                          params.augment},
                          {}};
  auto& model = result.model.model;
  auto parameters = model.parameters();
  nn::AdamState<float> adam;
  const nn::AdamParams hyper;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    const int head = epoch % 2;
    std::vector<PairRef> pairs;
    for (std::size_t s = 0; s < dataset.sequences.size(); ++s) {
      const auto& seq = dataset.sequences[s];
      for (int k = 0; k < params.pairs_per_sequence; ++k) {
        if (params.mode == PairingMode::kTemporal) {
          const auto [a, b] = sample_pair(seq, params.window, rng);
          pairs.push_back({s, a.start, b.start});
        } else {
          const int j = std::uniform_int_distribution<int>(0, static_cast<int>(seq.size()) - 1)(rng);
          pairs.push_back({s, j, j});
        }
      }
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);

    double loss_sum = 0.0;
    int steps = 0;
    for (std::size_t begin = 0; begin < pairs.size(); begin += params.batch) {
      const std::size_t end = std::min(pairs.size(), begin + params.batch);
      if (end - begin < 2) continue;
      std::vector<nn::Tensor<float>> inputs(2 * (end - begin));
      for (std::size_t i = begin; i < end; ++i) {
        const auto& seq = dataset.sequences[pairs[i].sequence];
        inputs[i - begin] = encode(window_patches(seq, pairs[i].a, params.window, params.mode), params.augment, rng);
        inputs[end - begin + i - begin] =
            encode(window_patches(seq, pairs[i].b, params.window, params.mode), params.augment, rng);
      }
      const auto n = static_cast<Eigen::Index>(end - begin);
      const nn::Tensor<float> logits = model.forward(nn::stack(inputs), head);
      const nn::RowMatrix<float> probs = nn::softmax(logits);
      const nn::RowMatrix<float> z = probs.topRows(n);
      const nn::RowMatrix<float> zp = probs.bottomRows(n);
      const auto mi = mi_loss<float>(z, zp);
      nn::RowMatrix<float> grad(probs.rows(), probs.cols());
      grad << mi.grad_z, mi.grad_zp;
      model.zero_grad();
      model.backward(nn::softmax_backward(probs, grad));
      nn::adam_step(parameters, adam, static_cast<float>(params.lr), hyper);
      loss_sum += mi.loss;
      ++steps;
    }
    result.trace.push_back({head, steps > 0 ? loss_sum / steps : 0.0});
    if (on_epoch) on_epoch(epoch, result.model);
  }
  return result;
}

int argmax_lowest(const Eigen::VectorXd& v) {
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = static_cast<int>(i);
  return best;
}

ClusterAssignment average_windows(const std::string& name, const std::vector<Eigen::VectorXd>& window_posteriors) {
  if (window_posteriors.empty()) throw std::invalid_argument("pseudo_label: sequence " + name + " has no windows");
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(window_posteriors.front().size());
  for (const auto& p : window_posteriors) mean += p;
  mean /= static_cast<double>(window_posteriors.size());
  return {name, mean, argmax_lowest(mean)};
}

std::vector<ClusterAssignment> pseudo_label(ClusteringModel& cm, const PatchDataset& dataset) {
  constexpr int kBatch = 64;
  AugmentParams eval = cm.augment;
  eval.enabled = false;
  std::mt19937_64 unused(0);
  std::vector<ClusterAssignment> out;
  for (const auto& seq : dataset.sequences) {
    const int n = static_cast<int>(seq.size());
    const int windows = cm.mode == PairingMode::kStatic ? n : n - cm.window + 1;
    if (windows < 1)
      throw std::invalid_argument("pseudo_label: sequence " + seq.name() + " is shorter than window " +
                                  std::to_string(cm.window));
    std::vector<Eigen::VectorXd> posteriors;
    for (int begin = 0; begin < windows; begin += kBatch) {
      const int end = std::min(windows, begin + kBatch);
      std::vector<nn::Tensor<float>> inputs;
      for (int w = begin; w < end; ++w) inputs.push_back(encode(window_patches(seq, w, cm.window, cm.mode), eval, unused));
      const auto probs = nn::softmax(cm.model.forward(nn::stack(inputs), 0));
      for (Eigen::Index i = 0; i < probs.rows(); ++i) posteriors.push_back(probs.row(i).transpose().cast<double>());
    }
    out.push_back(average_windows(seq.name(), posteriors));
  }
  return out;
}

Json to_json(const std::vector<ClusterAssignment>& assignments) {
  Json arr = Json::array();
  for (const auto& a : assignments) {
    arr.push_back({{"sequence", a.sequence},
                   {"cluster", a.cluster},
                   {"posterior", std::vector<double>(a.posterior.data(), a.posterior.data() + a.posterior.size())}});
  }
  return {{"assignments", arr}};
}

std::vector<ClusterAssignment> assignments_from_json(const Json& j) {
  std::vector<ClusterAssignment> out;
  for (const auto& e : j.at("assignments")) {
    ClusterAssignment a;
    a.sequence = e.at("sequence").get<std::string>();
    a.cluster = e.at("cluster").get<int>();
    const auto p = e.at("posterior").get<std::vector<double>>();
    a.posterior = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace motionclass
