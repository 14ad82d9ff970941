#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace motionclass::nn {

using Shape = std::vector<int>;

inline Eigen::Index element_count(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), Eigen::Index{1}, std::multiplies<>());
}

inline std::string to_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "," : "") + std::to_string(shape[i]);
  return s + "]";
}

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense row-major tensor; the leading dimension is the batch where one exists.
template <typename Scalar>
class Tensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(std::move(shape)), values_(Vector::Zero(element_count(shape_))) {}
  Tensor(Shape shape, Vector values) : shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != element_count(shape_))
      throw std::invalid_argument("tensor: " + std::to_string(values_.size()) + " values for shape " + to_string(shape_));
  }

  const Shape& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_.at(i); }
  Eigen::Index size() const { return values_.size(); }

  Vector& values() { return values_; }
  const Vector& values() const { return values_; }
  Scalar* data() { return values_.data(); }
  const Scalar* data() const { return values_.data(); }

  /// Elements per leading-dimension slice.
  Eigen::Index stride() const { return shape_.empty() || shape_[0] == 0 ? 0 : size() / shape_[0]; }

  /// Leading dimension by the rest, as a row-major matrix view.
  Eigen::Map<RowMatrix<Scalar>> matrix() { return {data(), shape_.empty() ? 0 : shape_[0], stride()}; }
  Eigen::Map<const RowMatrix<Scalar>> matrix() const { return {data(), shape_.empty() ? 0 : shape_[0], stride()}; }

  Tensor reshaped(Shape shape) const { return Tensor(std::move(shape), values_); }
  bool all_finite() const { return values_.allFinite(); }

 private:
  Shape shape_;
  Vector values_;
};

/// Stacks equally shaped tensors along a new leading dimension.
template <typename Scalar>
Tensor<Scalar> stack(const std::vector<Tensor<Scalar>>& items) {
  if (items.empty()) throw std::invalid_argument("stack: no tensors");
  const Shape& inner = items.front().shape();
  Shape shape{static_cast<int>(items.size())};
  shape.insert(shape.end(), inner.begin(), inner.end());
  Tensor<Scalar> out(shape);
  const auto n = items.front().size();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].shape() != inner) throw std::invalid_argument("stack: shape mismatch at item " + std::to_string(i));
    out.values().segment(static_cast<Eigen::Index>(i) * n, n) = items[i].values();
  }
  return out;
}

}  // namespace motionclass::nn
