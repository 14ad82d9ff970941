#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "motionclass/image.hpp"
#include "motionclass/nnet/network.hpp"
#include "motionclass/patches.hpp"

namespace motionclass {

/// Geometric augmentation shared by every patch of one encoded input.
struct AugmentParams {
  bool enabled = true;
  double crop_scale_min = 0.8;  // random square crop side, fraction of S
  double eval_crop_scale = 1.0; // centred crop used when augmentation is off
  double flip_prob = 0.0;       // horizontal flip probability

  bool operator==(const AugmentParams&) const = default;
};

/// A square crop in patch pixels, resized back to the patch side.
struct CropSpec {
  double x0 = 0.0;
  double y0 = 0.0;
  double extent = 0.0;
  bool flip = false;
};

CropSpec draw_crop(int side, const AugmentParams& params, std::mt19937_64& rng);

/// Luma plane of a patch scaled to [0, 1].
Plane<float> patch_gray(const RgbImage& patch);
Plane<float> apply_crop(const Plane<float>& plane, const CropSpec& crop);

/// 3x3 Sobel derivatives with replicated borders.
Plane<float> sobel_x(const Plane<float>& plane);
Plane<float> sobel_y(const Plane<float>& plane);

struct SubSequence {
  const PatchSequence* source = nullptr;
  int start = 0;
  int length = 0;

  std::span<const RgbImage> patches() const { return {source->patches.data() + start, static_cast<std::size_t>(length)}; }
};

/// Two independent uniformly drawn contiguous windows of length L (they may coincide).
std::pair<SubSequence, SubSequence> sample_pair(const PatchSequence& seq, int window, std::mt19937_64& rng);

/// 2L x S x S tensor of Sobel (dx, dy) channels per patch, one crop shared by all patches.
nn::Tensor<float> encode(std::span<const RgbImage> patches, const CropSpec& crop);
nn::Tensor<float> encode(std::span<const RgbImage> patches, const AugmentParams& aug, std::mt19937_64& rng);

template <typename Scalar>
struct MiLoss {
  Scalar loss = 0;
  nn::RowMatrix<Scalar> joint;   // symmetrised C x C joint distribution
  nn::RowMatrix<Scalar> grad_z;  // d loss / d z
  nn::RowMatrix<Scalar> grad_zp; // d loss / d z'
};

inline constexpr double kMiClamp = 1e-9;

/// Negative mutual information of paired soft assignments.
///
/// P = sym((1/n) sum_i z_i z'_i^T), loss = -sum P_cc' (ln P_cc' - ln P_c - ln P_c'), logs taken of
/// max(., 1e-9) so the log factor has zero derivative inside the clamp. Computed in double.
template <typename Scalar>
MiLoss<Scalar> mi_loss(const nn::RowMatrix<Scalar>& z, const nn::RowMatrix<Scalar>& zp) {
  if (z.rows() != zp.rows() || z.cols() != zp.cols() || z.rows() == 0)
    throw std::invalid_argument("mi_loss: z and z' must be non-empty and equally shaped");
  using M = Eigen::MatrixXd;
  const M a = z.template cast<double>();
  const M b = zp.template cast<double>();
  const double n = static_cast<double>(a.rows());
  // Fixed summation order makes swapping z and z' yield exactly Q^T.
  M q = M::Zero(a.cols(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index r = 0; r < a.cols(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c) q(r, c) += a(i, r) * b(i, c);
  q /= n;
  const M p = 0.5 * (q + q.transpose());
  const Eigen::VectorXd row = p.rowwise().sum();
  const Eigen::VectorXd col = p.colwise().sum().transpose();

  auto safe_log = [](double x) { return std::log(std::max(x, kMiClamp)); };
  // d/dx [x ln max(x, eps)]
  auto xlogx_grad = [&](double x) { return safe_log(x) + (x >= kMiClamp ? 1.0 : 0.0); };

  const auto c = p.rows();
  double loss = 0.0;
  M grad_p(c, c);
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      loss -= p(i, j) * (safe_log(p(i, j)) - safe_log(row(i)) - safe_log(col(j)));
      grad_p(i, j) = -xlogx_grad(p(i, j)) + xlogx_grad(row(i)) + xlogx_grad(col(j));
    }
  }
  const M grad_q = 0.5 * (grad_p + grad_p.transpose());
  MiLoss<Scalar> out;
  out.loss = static_cast<Scalar>(loss);
  out.joint = p.cast<Scalar>();
  out.grad_z = (b * grad_q.transpose() / n).cast<Scalar>();
  out.grad_zp = (a * grad_q / n).cast<Scalar>();
  return out;
}

enum class PairingMode {
  kTemporal,  // two windows of the same sequence
  kStatic,    // one patch repeated L times, paired with itself under two augmentations
};

struct ClusterParams {
  int window = 3;         // L
  int clusters = 2;       // C, main head
  int aux_clusters = 10;  // over-clustering head
  int epochs = 50;
  int batch = 32;         // pairs per step
  double lr = 1e-4;
  int pairs_per_sequence = 4;
  PairingMode mode = PairingMode::kTemporal;
  AugmentParams augment;
  std::vector<int> conv_channels{32, 32, 32};

  bool operator==(const ClusterParams&) const = default;
};

struct EpochLoss {
  int head = 0;  // 0 main, 1 auxiliary
  double mean_loss = 0.0;
};

struct ClusteringModel {
  nn::Model<float> model;
  int window = 3;
  PairingMode mode = PairingMode::kTemporal;
  AugmentParams augment;
};

struct ClusteringResult {
  ClusteringModel model;
  std::vector<EpochLoss> trace;

  std::vector<double> head_trace(int head) const;
};

/// Shared backbone with main (C) and over-clustering (C_aux) heads; even epochs optimise the main head,
/// odd epochs the auxiliary head. Throws for C < 2, an empty dataset, or sequences shorter than L.
/// `on_epoch`, when set, runs after every epoch with the epoch index and the model so far.
ClusteringResult train_clustering(const PatchDataset& dataset, const ClusterParams& params, std::uint64_t seed,
                                  const std::function<void(int, ClusteringModel&)>& on_epoch = {});

struct ClusterAssignment {
  std::string sequence;
  Eigen::VectorXd posterior;
  int cluster = 0;
};

/// Index of the largest entry; ties resolve to the lowest index.
int argmax_lowest(const Eigen::VectorXd& v);

/// Averages main-head softmax over every length-L window (each single patch in static mode), without augmentation.
std::vector<ClusterAssignment> pseudo_label(ClusteringModel& model, const PatchDataset& dataset);

/// Mean main-head posterior over precomputed per-window posteriors.
ClusterAssignment average_windows(const std::string& name, const std::vector<Eigen::VectorXd>& window_posteriors);

Json to_json(const std::vector<ClusterAssignment>& assignments);
std::vector<ClusterAssignment> assignments_from_json(const Json& j);

}  // namespace motionclass
