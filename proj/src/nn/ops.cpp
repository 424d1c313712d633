#include "fnd/nn/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fnd::nn {

Vector linear(std::span<const double> x, const Parameter& weight, const Parameter& bias) {
  const Matrix& w = weight.value;
  if (x.size() != w.rows() || bias.value.rows() != 1 || bias.value.cols() != w.cols()) {
    throw std::invalid_argument("linear: shape mismatch (x=" + std::to_string(x.size()) + ", W=" +
                                std::to_string(w.rows()) + "x" + std::to_string(w.cols()) + ")");
  }
  Vector y(bias.value.values().begin(), bias.value.values().end());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const auto row = w.row(i);
    for (std::size_t j = 0; j < w.cols(); ++j) y[j] += xi * row[j];
  }
  return y;
}

Vector linear_backward(std::span<const double> x, std::span<const double> dy, Parameter& weight,
                       Parameter& bias) {
  Matrix& gw = weight.grad;
  const Matrix& w = weight.value;
  Vector dx(w.rows(), 0.0);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const auto row = w.row(i);
    auto grow = gw.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) {
      grow[j] += x[i] * dy[j];
      acc += row[j] * dy[j];
    }
    dx[i] = acc;
  }
  for (std::size_t j = 0; j < dy.size(); ++j) bias.grad(0, j) += dy[j];
  return dx;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

SoftmaxXent softmax_xent(std::span<const double> logits, int target) {
  if (logits.size() != 2 || (target != 0 && target != 1)) {
    throw std::invalid_argument("softmax_xent: expects two logits and target 0/1");
  }
  const double m = std::max(logits[0], logits[1]);
  const double z0 = logits[0] - m;
  const double z1 = logits[1] - m;
  const double log_norm = std::log(std::exp(z0) + std::exp(z1));
  SoftmaxXent r;
  r.probabilities = {std::exp(z0 - log_norm), std::exp(z1 - log_norm)};
  r.loss = log_norm - (target == 0 ? z0 : z1);
  return r;
}

std::array<double, 2> softmax_xent_grad(const SoftmaxXent& result, int target) {
  std::array<double, 2> g = result.probabilities;
  g[static_cast<std::size_t>(target)] -= 1.0;
  return g;
}

Vector dropout_mask(std::size_t n, double rate, bool training, Rng& rng) {
  if (!(rate >= 0.0) || rate >= 1.0) {
    throw std::invalid_argument("dropout rate must be in [0, 1)");
  }
  Vector mask(n, 1.0);
  if (!training || rate == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& m : mask) m = rng.bernoulli(rate) ? 0.0 : keep_scale;
  return mask;
}

Vector dropout(std::span<const double> x, double rate, bool training, Rng& rng, Vector* mask_out) {
  Vector mask = dropout_mask(x.size(), rate, training, rng);
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * mask[i];
  if (mask_out) *mask_out = std::move(mask);
  return y;
}

Vector dropout(std::span<const double> x, double rate, bool training, std::uint64_t seed) {
  Rng rng(seed);
  return dropout(x, rate, training, rng);
}

}  // namespace fnd::nn
