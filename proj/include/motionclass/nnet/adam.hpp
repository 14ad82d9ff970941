#pragma once

#include <cmath>
#include <vector>

#include "motionclass/nnet/layers.hpp"

namespace motionclass::nn {

struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename Scalar>
struct AdamState {
  std::vector<typename Tensor<Scalar>::Vector> m;
  std::vector<typename Tensor<Scalar>::Vector> v;
  long step = 0;
};

/// One bias-corrected Adam update of every parameter from its accumulated gradient.
template <typename Scalar>
void adam_step(const std::vector<Parameter<Scalar>*>& params, AdamState<Scalar>& state, double lr,
               const AdamParams& hyper = {}) {
  if (state.m.empty()) {
    for (auto* p : params) {
      state.m.push_back(Tensor<Scalar>::Vector::Zero(p->value.size()));
      state.v.push_back(Tensor<Scalar>::Vector::Zero(p->value.size()));
    }
  }
  if (state.m.size() != params.size()) throw std::invalid_argument("adam: parameter list changed between steps");
  ++state.step;
  const double c1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.step));
  const auto b1 = static_cast<Scalar>(hyper.beta1);
  const auto b2 = static_cast<Scalar>(hyper.beta2);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& g = params[i]->grad.values();
    auto& m = state.m[i];
    auto& v = state.v[i];
    if (m.size() != g.size()) throw std::invalid_argument("adam: shape mismatch for " + params[i]->name);
    m = b1 * m + (Scalar(1) - b1) * g;
    v = b2 * v + (Scalar(1) - b2) * g.cwiseAbs2();
    const auto m_hat = m.array() / static_cast<Scalar>(c1);
    const auto v_hat = v.array() / static_cast<Scalar>(c2);
    params[i]->value.values().array() -=
        static_cast<Scalar>(lr) * m_hat / (v_hat.sqrt() + static_cast<Scalar>(hyper.eps));
  }
}

}  // namespace motionclass::nn
