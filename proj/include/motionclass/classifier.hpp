#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "motionclass/image.hpp"
#include "motionclass/nnet/network.hpp"
#include "motionclass/patches.hpp"
#include "motionclass/seqclust.hpp"

namespace motionclass {

struct ClassifierParams {
  int epochs = 20;
  int batch = 32;
  double lr = 1e-3;
  AugmentParams augment{true, 0.85, 1.0, 0.5};
  std::vector<int> conv_channels{32, 32, 32};

  bool operator==(const ClassifierParams&) const = default;
};

struct PseudoLabeledPatch {
  const RgbImage* patch = nullptr;
  int label = 0;
};

/// Every patch of every sequence, labelled with its sequence's cluster.
std::vector<PseudoLabeledPatch> pseudo_labeled_patches(const PatchDataset& dataset,
                                                       const std::vector<ClusterAssignment>& assignments);

/// (3, S, S) planar RGB scaled to [0, 1], after an optional crop/flip.
nn::Tensor<float> encode_rgb(const RgbImage& patch, const CropSpec& crop);

struct PatchClassifier {
  nn::Model<float> model;
  AugmentParams augment;  // eval crop only
};

struct ClassifierResult {
  PatchClassifier classifier;
  std::vector<double> loss_trace;  // mean cross-entropy per epoch
};

/// Single-patch convnet trained with cross-entropy on pseudo-labels. `classes` fixes the head width.
ClassifierResult train_classifier(std::span<const PseudoLabeledPatch> examples, int classes,
                                  const ClassifierParams& params, std::uint64_t seed);

struct Prediction {
  int cluster = 0;
  Eigen::VectorXd posterior;
};

/// Deterministic, no augmentation. Throws std::invalid_argument on a wrong patch shape.
Prediction predict(PatchClassifier& classifier, const RgbImage& patch);
std::vector<Prediction> predict(PatchClassifier& classifier, std::span<const RgbImage* const> patches);

}  // namespace motionclass
