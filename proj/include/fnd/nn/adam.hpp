#pragma once

#include <span>

#include "fnd/nn/parameter.hpp"

namespace fnd::nn {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam update in place, then zeroes the gradients.
void adam_step(std::span<Parameter* const> params, const AdamConfig& config = {});

}  // namespace fnd::nn
