#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "fnd/nn/parameter.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::nn {

/// y = Wᵀx + b with W of shape (in × out) and b of shape (1 × out).
Vector linear(std::span<const double> x, const Parameter& weight, const Parameter& bias);

/// Accumulates dW += x dyᵀ and db += dy; returns dx = W dy.
Vector linear_backward(std::span<const double> x, std::span<const double> dy, Parameter& weight,
                       Parameter& bias);

/// Overflow-safe logistic function.
double sigmoid(double x);

struct SoftmaxXent {
  double loss = 0.0;
  std::array<double, 2> probabilities{};
};

/// Two-class softmax cross-entropy, -log softmax(o)[target].
SoftmaxXent softmax_xent(std::span<const double> logits, int target);

/// ∂loss/∂logits = p - onehot(target).
std::array<double, 2> softmax_xent_grad(const SoftmaxXent& result, int target);

/// Per-entry multipliers: 0 for dropped entries, 1/(1-p) for survivors.
/// Evaluation mode (or p = 0) yields all ones.
Vector dropout_mask(std::size_t n, double rate, bool training, Rng& rng);

Vector dropout(std::span<const double> x, double rate, bool training, Rng& rng,
               Vector* mask_out = nullptr);
Vector dropout(std::span<const double> x, double rate, bool training, std::uint64_t seed);

}  // namespace fnd::nn
