#pragma once

#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "motionclass/nnet/layers.hpp"

namespace motionclass::nn {

template <typename Scalar>
class Sequential {
 public:
  Sequential() = default;
  Sequential(Sequential&&) noexcept = default;
  Sequential& operator=(Sequential&&) noexcept = default;

  template <typename L, typename... Args>
  L& add(Args&&... args) {
    auto layer = std::make_unique<L>(std::forward<Args>(args)...);
    L& ref = *layer;
    layers_.push_back(std::move(layer));
    return ref;
  }

  Shape output_shape(Shape shape) const {
    for (const auto& l : layers_) shape = l->output_shape(shape);
    return shape;
  }

  Tensor<Scalar> forward(Tensor<Scalar> x) {
    for (auto& l : layers_) x = l->forward(x);
    return x;
  }

  Tensor<Scalar> backward(Tensor<Scalar> g) {
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
    return g;
  }

  std::vector<Parameter<Scalar>*> parameters() {
    std::vector<Parameter<Scalar>*> out;
    for (auto& l : layers_)
      for (auto* p : l->parameters()) out.push_back(p);
    return out;
  }

  Json describe() const {
    Json j = Json::array();
    for (const auto& l : layers_) j.push_back(l->describe());
    return j;
  }

  std::size_t size() const { return layers_.size(); }
  Layer<Scalar>& layer(std::size_t i) { return *layers_.at(i); }

 private:
  std::vector<std::unique_ptr<Layer<Scalar>>> layers_;
};

/// Declarative architecture: [conv(k x k, c)-relu-maxpool] per entry of conv_channels, then one dense head per
/// entry of head_sizes. "resnet34" is a recognised backbone name that this build does not provide.
struct ArchSpec {
  std::string backbone = "small_convnet";
  int in_channels = 3;
  int input_size = 64;
  std::vector<int> conv_channels{32, 32, 32};
  int kernel = 3;
  std::vector<int> head_sizes{2};

  bool operator==(const ArchSpec&) const = default;
};

inline Json to_json(const ArchSpec& a) {
  return {{"backbone", a.backbone},       {"in_channels", a.in_channels}, {"input_size", a.input_size},
          {"conv_channels", a.conv_channels}, {"kernel", a.kernel},         {"head_sizes", a.head_sizes}};
}

inline ArchSpec arch_from_json(const Json& j) {
  reject_unknown_keys(j, {"backbone", "in_channels", "input_size", "conv_channels", "kernel", "head_sizes"}, "arch");
  ArchSpec a;
  read_optional(j, "backbone", a.backbone);
  read_optional(j, "in_channels", a.in_channels);
  read_optional(j, "input_size", a.input_size);
  read_optional(j, "conv_channels", a.conv_channels);
  read_optional(j, "kernel", a.kernel);
  read_optional(j, "head_sizes", a.head_sizes);
  return a;
}

/// Shared backbone with one or more linear heads producing logits.
template <typename Scalar>
class Model {
 public:
  Model(const ArchSpec& arch, std::uint64_t seed) : arch_(arch) {
    if (arch.backbone == "resnet34")
      throw std::invalid_argument("arch: backbone 'resnet34' is declared but not provided by this build");
    if (arch.backbone != "small_convnet") throw std::invalid_argument("arch: unknown backbone '" + arch.backbone + "'");
    if (arch.head_sizes.empty()) throw std::invalid_argument("arch: at least one head required");
    std::mt19937_64 rng(seed);
    int channels = arch.in_channels;
    int side = arch.input_size;
    for (int c : arch.conv_channels) {
      backbone_.template add<Conv2d<Scalar>>(channels, c, arch.kernel).initialize(rng);
      backbone_.template add<Relu<Scalar>>();
      backbone_.template add<MaxPool2d<Scalar>>();
      channels = c;
      side /= 2;
    }
    if (side < 1) throw std::invalid_argument("arch: too many pooling stages for input_size");
    features_ = channels * side * side;
    for (int classes : arch.head_sizes) {
      Sequential<Scalar> head;
      head.template add<Dense<Scalar>>(features_, classes).initialize(rng);
      heads_.push_back(std::move(head));
    }
  }

  const ArchSpec& arch() const { return arch_; }
  int head_count() const { return static_cast<int>(heads_.size()); }
  int head_size(int head) const { return arch_.head_sizes.at(head); }
  Shape input_shape(int batch) const { return {batch, arch_.in_channels, arch_.input_size, arch_.input_size}; }

  /// Logits of `head`; caches activations for one backward pass.
  Tensor<Scalar> forward(const Tensor<Scalar>& batch, int head) {
    const Shape expected = input_shape(batch.rank() > 0 ? batch.dim(0) : 0);
    if (batch.shape() != expected)
      throw std::invalid_argument("model input: expected " + to_string(expected) + ", got " + to_string(batch.shape()));
    head_ = head;
    return heads_.at(head).forward(backbone_.forward(batch));
  }

  /// Accumulates gradients for the head used in the last forward pass.
  void backward(const Tensor<Scalar>& grad_logits) {
    if (head_ < 0) throw std::logic_error("model: backward called without a fresh forward cache");
    const int head = head_;
    head_ = -1;
    backbone_.backward(heads_.at(head).backward(grad_logits));
  }

  std::vector<Parameter<Scalar>*> parameters() {
    auto out = backbone_.parameters();
    for (auto& h : heads_)
      for (auto* p : h.parameters()) out.push_back(p);
    return out;
  }

  void zero_grad() {
    for (auto* p : parameters()) p->grad.values().setZero();
  }

  std::size_t parameter_count() {
    std::size_t n = 0;
    for (auto* p : parameters()) n += static_cast<std::size_t>(p->value.size());
    return n;
  }

  Json describe() const {
    Json heads = Json::array();
    for (const auto& h : heads_) heads.push_back(h.describe());
    return {{"backbone", backbone_.describe()}, {"heads", heads}};
  }

 private:
  ArchSpec arch_;
  Sequential<Scalar> backbone_;
  std::vector<Sequential<Scalar>> heads_;
  int features_ = 0;
  int head_ = -1;
};

/// Row-wise softmax of an (N, C) logit tensor, max-shifted.
template <typename Scalar>
RowMatrix<Scalar> softmax(const Tensor<Scalar>& logits) {
  const auto l = logits.matrix();
  RowMatrix<Scalar> out(l.rows(), l.cols());
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const Scalar m = l.row(i).maxCoeff();
    out.row(i) = (l.row(i).array() - m).exp().matrix();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

/// Gradient with respect to logits given the gradient with respect to softmax outputs.
template <typename Scalar>
Tensor<Scalar> softmax_backward(const RowMatrix<Scalar>& probs, const RowMatrix<Scalar>& grad_probs) {
  Tensor<Scalar> out({static_cast<int>(probs.rows()), static_cast<int>(probs.cols())});
  auto g = out.matrix();
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    const Scalar dot = probs.row(i).dot(grad_probs.row(i));
    g.row(i) = probs.row(i).cwiseProduct((grad_probs.row(i).array() - dot).matrix());
  }
  return out;
}

/// Mean cross-entropy over the batch; `grad` receives the gradient with respect to the logits.
template <typename Scalar>
Scalar cross_entropy(const Tensor<Scalar>& logits, std::span<const int> labels, Tensor<Scalar>& grad) {
  const RowMatrix<Scalar> p = softmax(logits);
  const auto n = p.rows();
  grad = Tensor<Scalar>(logits.shape());
  auto g = grad.matrix();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int y = labels[i];
    if (y < 0 || y >= p.cols()) throw std::invalid_argument("cross_entropy: label out of range");
    loss -= std::log(std::max<double>(p(i, y), 1e-30));
    g.row(i) = p.row(i) / static_cast<Scalar>(n);
    g(i, y) -= Scalar(1) / static_cast<Scalar>(n);
  }
  return static_cast<Scalar>(loss / static_cast<double>(n));
}

}  // namespace motionclass::nn
