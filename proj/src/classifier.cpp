#include "motionclass/classifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "motionclass/nnet/adam.hpp"

namespace motionclass {

std::vector<PseudoLabeledPatch> pseudo_labeled_patches(const PatchDataset& dataset,
                                                       const std::vector<ClusterAssignment>& assignments) {
  std::map<std::string, int> label;
  for (const auto& a : assignments) label[a.sequence] = a.cluster;
  std::vector<PseudoLabeledPatch> out;
  for (const auto& seq : dataset.sequences) {
    const auto it = label.find(seq.name());
    if (it == label.end()) throw std::invalid_argument("pseudo-labels: no assignment for sequence " + seq.name());
    for (const auto& p : seq.patches) out.push_back({&p, it->second});
  }
  return out;
}

nn::Tensor<float> encode_rgb(const RgbImage& patch, const CropSpec& crop) {
  const int side = patch.width;
  nn::Tensor<float> out({3, side, side});
  const std::size_t plane = static_cast<std::size_t>(side) * side;
  Plane<float> channel(side, side);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) channel(y, x) = patch.at(x, y, c) / 255.0f;
    const Plane<float> cropped = apply_crop(channel, crop);
    std::copy(cropped.data(), cropped.data() + plane, out.data() + c * plane);
  }
  return out;
}

ClassifierResult train_classifier(std::span<const PseudoLabeledPatch> examples, int classes,
                                  const ClassifierParams& params, std::uint64_t seed) {
  if (examples.empty()) throw std::invalid_argument("classifier: no training examples");
  if (classes < 1) throw std::invalid_argument("classifier: classes must be positive");
  const int side = examples.front().patch->width;
  for (const auto& e : examples) {
    if (e.patch->width != side || e.patch->height != side)
      throw std::invalid_argument("classifier: patches must share one square size");
    if (e.label < 0 || e.label >= classes) throw std::invalid_argument("classifier: label out of range");
  }

  nn::ArchSpec arch;
  arch.in_channels = 3;
  arch.input_size = side;
  arch.conv_channels = params.conv_channels;
  arch.head_sizes = {classes};
  ClassifierResult result{PatchClassifier{nn::Model<float>(arch, seed ^ 0xc1a55ULL), params.augment}, {}};
  auto& model = result.classifier.model;
  auto parameters = model.parameters();
  nn::AdamState<float> adam;

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    int steps = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += params.batch) {
      const std::size_t end = std::min(order.size(), begin + params.batch);
      std::vector<nn::Tensor<float>> inputs;
      std::vector<int> labels;
      for (std::size_t i = begin; i < end; ++i) {
        const auto& e = examples[order[i]];
        inputs.push_back(encode_rgb(*e.patch, draw_crop(side, params.augment, rng)));
        labels.push_back(e.label);
      }
      const auto logits = model.forward(nn::stack(inputs), 0);
      nn::Tensor<float> grad;
      loss_sum += nn::cross_entropy(logits, std::span<const int>(labels), grad);
      model.zero_grad();
      model.backward(grad);
      nn::adam_step(parameters, adam, params.lr);
      ++steps;
    }
    result.loss_trace.push_back(loss_sum / std::max(1, steps));
  }
  return result;
}

std::vector<Prediction> predict(PatchClassifier& classifier, std::span<const RgbImage* const> patches) {
  constexpr std::size_t kBatch = 64;
  const int side = classifier.model.arch().input_size;
  AugmentParams eval = classifier.augment;
  eval.enabled = false;
  std::mt19937_64 unused(0);
  std::vector<Prediction> out;
  for (std::size_t begin = 0; begin < patches.size(); begin += kBatch) {
    const std::size_t end = std::min(patches.size(), begin + kBatch);
    std::vector<nn::Tensor<float>> inputs;
    for (std::size_t i = begin; i < end; ++i) {
      const RgbImage& p = *patches[i];
      if (p.width != side || p.height != side)
        throw std::invalid_argument("predict: expected " + std::to_string(side) + "x" + std::to_string(side) +
                                    " patch, got " + std::to_string(p.width) + "x" + std::to_string(p.height));
      inputs.push_back(encode_rgb(p, draw_crop(side, eval, unused)));
    }
    const auto probs = nn::softmax(classifier.model.forward(nn::stack(inputs), 0));
    for (Eigen::Index i = 0; i < probs.rows(); ++i) {
      Prediction pred;
      pred.posterior = probs.row(i).transpose().cast<double>();
      pred.cluster = argmax_lowest(pred.posterior);
      out.push_back(std::move(pred));
    }
  }
  return out;
}

Prediction predict(PatchClassifier& classifier, const RgbImage& patch) {
  const RgbImage* one[] = {&patch};
  return predict(classifier, std::span<const RgbImage* const>(one)).front();
}

}  // namespace motionclass
