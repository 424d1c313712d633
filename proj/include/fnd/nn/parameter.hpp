#pragma once

#include <cstdint>
#include <string>

#include "fnd/nn/matrix.hpp"

namespace fnd::nn {

/// A learnable matrix with its gradient and Adam moments.
struct Parameter {
  Parameter() = default;
  Parameter(std::string name, std::size_t rows, std::size_t cols)
      : name(std::move(name)),
        value(rows, cols),
        grad(rows, cols),
        first_moment(rows, cols),
        second_moment(rows, cols) {}

  std::string name;
  Matrix value;
  Matrix grad;
  Matrix first_moment;
  Matrix second_moment;
  std::int64_t step = 0;

  void zero_grad() { grad.fill(0.0); }
};

}  // namespace fnd::nn
