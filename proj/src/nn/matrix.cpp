#include "fnd/nn/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace fnd::nn {

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace fnd::nn
