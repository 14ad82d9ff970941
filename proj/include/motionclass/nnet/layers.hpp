#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "motionclass/json_util.hpp"
#include "motionclass/nnet/tensor.hpp"

namespace motionclass::nn {

template <typename Scalar>
struct Parameter {
  std::string name;
  Tensor<Scalar> value;
  Tensor<Scalar> grad;

  Parameter(std::string n, Shape shape) : name(std::move(n)), value(shape), grad(shape) {}
};

template <typename Scalar>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual std::string name() const = 0;
  /// Output shape for an input shape including the batch dimension.
  virtual Shape output_shape(const Shape& input) const = 0;
  virtual Tensor<Scalar> forward(const Tensor<Scalar>& input) = 0;
  /// Accumulates parameter gradients and returns the gradient with respect to the input.
  virtual Tensor<Scalar> backward(const Tensor<Scalar>& grad_output) = 0;
  virtual std::vector<Parameter<Scalar>*> parameters() { return {}; }
  virtual Json describe() const = 0;

 protected:
  [[noreturn]] void shape_error(const std::string& expected, const Shape& got) const {
    throw std::invalid_argument(name() + ": expected input " + expected + ", got " + to_string(got));
  }
  void require_cache(bool present) const {
    if (!present) throw std::logic_error(name() + ": backward called without a fresh forward cache");
  }
};

/// He-uniform initialisation, bound sqrt(6 / fan_in).
template <typename Scalar>
void he_uniform(Tensor<Scalar>& weights, int fan_in, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-std::sqrt(6.0 / fan_in), std::sqrt(6.0 / fan_in));
  for (Eigen::Index i = 0; i < weights.size(); ++i) weights.data()[i] = static_cast<Scalar>(dist(rng));
}

/// 2-D convolution, stride 1, zero padding k/2 ("same" output size). Weights are (out, in*k*k).
template <typename Scalar>
class Conv2d final : public Layer<Scalar> {
 public:
  Conv2d(int in_channels, int out_channels, int kernel)
      : in_(in_channels), out_(out_channels), k_(kernel),
        weight_("weight", {out_channels, in_channels * kernel * kernel}), bias_("bias", {out_channels}) {
    if (kernel % 2 == 0) throw std::invalid_argument("conv2d: kernel size must be odd");
  }

  std::string name() const override {
    return "conv2d(" + std::to_string(in_) + "->" + std::to_string(out_) + ", " + std::to_string(k_) + "x" +
           std::to_string(k_) + ")";
  }
  Shape output_shape(const Shape& s) const override {
    if (s.size() != 4 || s[1] != in_) this->shape_error("[N," + std::to_string(in_) + ",H,W]", s);
    return {s[0], out_, s[2], s[3]};
  }
  std::vector<Parameter<Scalar>*> parameters() override { return {&weight_, &bias_}; }
  Json describe() const override { return {{"type", "conv2d"}, {"in", in_}, {"out", out_}, {"kernel", k_}}; }

  void initialize(std::mt19937_64& rng) {
    he_uniform(weight_.value, in_ * k_ * k_, rng);
    bias_.value.values().setZero();
  }
  Parameter<Scalar>& weight() { return weight_; }
  Parameter<Scalar>& bias() { return bias_; }

  Tensor<Scalar> forward(const Tensor<Scalar>& input) override {
    const Shape out_shape = output_shape(input.shape());
    const int n = input.dim(0), h = input.dim(2), w = input.dim(3);
    Tensor<Scalar> out(out_shape);
    RowMatrix<Scalar> col(in_ * k_ * k_, h * w);
    const auto weights = weight_matrix();
    for (int b = 0; b < n; ++b) {
      im2col(input.data() + b * input.stride(), h, w, col);
      Eigen::Map<RowMatrix<Scalar>> y(out.data() + b * out.stride(), out_, h * w);
      y.noalias() = weights * col;
      y.colwise() += bias_.value.values();
    }
    input_ = input;
    cached_ = true;
    return out;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& grad_output) override {
    this->require_cache(cached_);
    cached_ = false;
    const int n = input_.dim(0), h = input_.dim(2), w = input_.dim(3);
    Tensor<Scalar> grad_input(input_.shape());
    RowMatrix<Scalar> col(in_ * k_ * k_, h * w);
    RowMatrix<Scalar> dcol(in_ * k_ * k_, h * w);
    const auto weights = weight_matrix();
    Eigen::Map<RowMatrix<Scalar>> dweights(weight_.grad.data(), out_, in_ * k_ * k_);
    for (int b = 0; b < n; ++b) {
      Eigen::Map<const RowMatrix<Scalar>> g(grad_output.data() + b * grad_output.stride(), out_, h * w);
      im2col(input_.data() + b * input_.stride(), h, w, col);
      dweights.noalias() += g * col.transpose();
      bias_.grad.values() += g.rowwise().sum();
      dcol.noalias() = weights.transpose() * g;
      col2im(dcol, h, w, grad_input.data() + b * grad_input.stride());
    }
    input_ = Tensor<Scalar>();
    return grad_input;
  }

 private:
  Eigen::Map<const RowMatrix<Scalar>> weight_matrix() const { return {weight_.value.data(), out_, in_ * k_ * k_}; }

  void im2col(const Scalar* src, int h, int w, RowMatrix<Scalar>& col) const {
    const int pad = k_ / 2;
    for (int c = 0; c < in_; ++c) {
      const Scalar* plane = src + static_cast<Eigen::Index>(c) * h * w;
      for (int ki = 0; ki < k_; ++ki) {
        for (int kj = 0; kj < k_; ++kj) {
          Scalar* row = col.data() + static_cast<Eigen::Index>((c * k_ + ki) * k_ + kj) * h * w;
          for (int y = 0; y < h; ++y) {
            const int sy = y + ki - pad;
            Scalar* dst = row + static_cast<Eigen::Index>(y) * w;
            if (sy < 0 || sy >= h) {
              std::fill(dst, dst + w, Scalar(0));
              continue;
            }
            const Scalar* line = plane + static_cast<Eigen::Index>(sy) * w;
            const int dx = kj - pad;
            const int x_lo = std::max(0, -dx), x_hi = std::min(w, w - dx);
            std::fill(dst, dst + x_lo, Scalar(0));
            std::copy(line + x_lo + dx, line + x_hi + dx, dst + x_lo);
            std::fill(dst + x_hi, dst + w, Scalar(0));
          }
        }
      }
    }
  }

  void col2im(const RowMatrix<Scalar>& col, int h, int w, Scalar* dst) const {
    const int pad = k_ / 2;
    for (int c = 0; c < in_; ++c) {
      Scalar* plane = dst + static_cast<Eigen::Index>(c) * h * w;
      for (int ki = 0; ki < k_; ++ki) {
        for (int kj = 0; kj < k_; ++kj) {
          const Scalar* row = col.data() + static_cast<Eigen::Index>((c * k_ + ki) * k_ + kj) * h * w;
          for (int y = 0; y < h; ++y) {
            const int sy = y + ki - pad;
            if (sy < 0 || sy >= h) continue;
            const int dx = kj - pad;
            const int x_lo = std::max(0, -dx), x_hi = std::min(w, w - dx);
            Scalar* line = plane + static_cast<Eigen::Index>(sy) * w;
            const Scalar* src = row + static_cast<Eigen::Index>(y) * w;
            for (int x = x_lo; x < x_hi; ++x) line[x + dx] += src[x];
          }
        }
      }
    }
  }

  int in_, out_, k_;
  Parameter<Scalar> weight_;
  Parameter<Scalar> bias_;
  Tensor<Scalar> input_;
  bool cached_ = false;
};

template <typename Scalar>
class Relu final : public Layer<Scalar> {
 public:
  std::string name() const override { return "relu"; }
  Shape output_shape(const Shape& s) const override { return s; }
  Json describe() const override { return {{"type", "relu"}}; }

  Tensor<Scalar> forward(const Tensor<Scalar>& input) override {
    Tensor<Scalar> out(input.shape(), input.values().cwiseMax(Scalar(0)));
    positive_ = (input.values().array() > Scalar(0)).template cast<Scalar>();
    cached_ = true;
    return out;
  }
  Tensor<Scalar> backward(const Tensor<Scalar>& grad_output) override {
    this->require_cache(cached_);
    cached_ = false;
    return Tensor<Scalar>(grad_output.shape(), grad_output.values().cwiseProduct(positive_));
  }

 private:
  typename Tensor<Scalar>::Vector positive_;
  bool cached_ = false;
};

/// 2x2 max pooling, stride 2; odd trailing rows/columns are dropped. Ties go to the first element in raster order.
template <typename Scalar>
class MaxPool2d final : public Layer<Scalar> {
 public:
  std::string name() const override { return "maxpool2d(2)"; }
  Shape output_shape(const Shape& s) const override {
    if (s.size() != 4 || s[2] < 2 || s[3] < 2) this->shape_error("[N,C,H>=2,W>=2]", s);
    return {s[0], s[1], s[2] / 2, s[3] / 2};
  }
  Json describe() const override { return {{"type", "maxpool2d"}, {"size", 2}}; }

  Tensor<Scalar> forward(const Tensor<Scalar>& input) override {
    const Shape os = output_shape(input.shape());
    Tensor<Scalar> out(os);
    argmax_.resize(static_cast<std::size_t>(out.size()));
    const int h = input.dim(2), w = input.dim(3), oh = os[2], ow = os[3];
    const Eigen::Index planes = static_cast<Eigen::Index>(os[0]) * os[1];
    for (Eigen::Index p = 0; p < planes; ++p) {
      const Scalar* src = input.data() + p * h * w;
      for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
          Eigen::Index best = (2 * y) * w + 2 * x;
          for (Eigen::Index cand : {best + 1, best + w, best + w + 1})
            if (src[cand] > src[best]) best = cand;
          const Eigen::Index o = p * oh * ow + y * ow + x;
          out.data()[o] = src[best];
          argmax_[o] = p * h * w + best;
        }
      }
    }
    input_shape_ = input.shape();
    cached_ = true;
    return out;
  }
  Tensor<Scalar> backward(const Tensor<Scalar>& grad_output) override {
    this->require_cache(cached_);
    cached_ = false;
    Tensor<Scalar> grad_input(input_shape_);
    for (Eigen::Index o = 0; o < grad_output.size(); ++o) grad_input.data()[argmax_[o]] += grad_output.data()[o];
    return grad_input;
  }

 private:
  std::vector<Eigen::Index> argmax_;
  Shape input_shape_;
  bool cached_ = false;
};

/// Fully connected layer over the flattened non-batch dimensions. Weights are (out, in).
template <typename Scalar>
class Dense final : public Layer<Scalar> {
 public:
  Dense(int in_features, int out_features)
      : in_(in_features), out_(out_features), weight_("weight", {out_features, in_features}), bias_("bias", {out_features}) {}

  std::string name() const override { return "dense(" + std::to_string(in_) + "->" + std::to_string(out_) + ")"; }
  Shape output_shape(const Shape& s) const override {
    if (s.empty() || element_count(s) != static_cast<Eigen::Index>(s[0]) * in_)
      this->shape_error("[N," + std::to_string(in_) + " features]", s);
    return {s[0], out_};
  }
  std::vector<Parameter<Scalar>*> parameters() override { return {&weight_, &bias_}; }
  Json describe() const override { return {{"type", "dense"}, {"in", in_}, {"out", out_}}; }

  void initialize(std::mt19937_64& rng) {
    he_uniform(weight_.value, in_, rng);
    bias_.value.values().setZero();
  }
  Parameter<Scalar>& weight() { return weight_; }
  Parameter<Scalar>& bias() { return bias_; }

  Tensor<Scalar> forward(const Tensor<Scalar>& input) override {
    Tensor<Scalar> out(output_shape(input.shape()));
    input_ = input;
    auto y = out.matrix();
    y.noalias() = input.matrix() * weight_matrix().transpose();
    y.rowwise() += bias_.value.values().transpose();
    cached_ = true;
    return out;
  }
  Tensor<Scalar> backward(const Tensor<Scalar>& grad_output) override {
    this->require_cache(cached_);
    cached_ = false;
    const auto g = grad_output.matrix();
    Eigen::Map<RowMatrix<Scalar>> dweights(weight_.grad.data(), out_, in_);
    dweights.noalias() += g.transpose() * input_.matrix();
    bias_.grad.values() += g.colwise().sum().transpose();
    Tensor<Scalar> grad_input(input_.shape());
    grad_input.matrix().noalias() = g * weight_matrix();
    input_ = Tensor<Scalar>();
    return grad_input;
  }

 private:
  Eigen::Map<const RowMatrix<Scalar>> weight_matrix() const { return {weight_.value.data(), out_, in_}; }

  int in_, out_;
  Parameter<Scalar> weight_;
  Parameter<Scalar> bias_;
  Tensor<Scalar> input_;
  bool cached_ = false;
};

}  // namespace motionclass::nn
